import sys

from fermisym.cli import main

sys.exit(main())

"""Pick the kernel implementation at import time.

The compiled extension is used when it imports cleanly; setting the
environment variable ``FERMISYM_PURE_PYTHON`` to a non-empty value other
than ``0`` forces the fallback.
"""

from __future__ import annotations

import os

from fermisym import _core_py

_force_pure = os.environ.get("FERMISYM_PURE_PYTHON", "") not in ("", "0")

compiled = None
if not _force_pure:
    try:
        from fermisym import _core as compiled  # type: ignore[attr-defined]
    except ImportError:
        compiled = None

kernels = compiled if compiled is not None else _core_py
BACKEND = "compiled" if compiled is not None else "python"

"""Import-time selection of the kernel backend.

The compiled extension is preferred when present; the numpy fallback keeps
the package fully functional without a C toolchain.  ``EARLYWORK_BACKEND``
forces the choice: ``compiled`` (fail loudly if the extension is missing)
or ``python``.
"""

from __future__ import annotations

import os

_forced = os.environ.get("EARLYWORK_BACKEND")

if _forced == "python":
    from . import _kernels_py as _impl
elif _forced == "compiled":
    from . import _kernels as _impl  # type: ignore[no-redef]
elif _forced is None:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl
else:
    raise RuntimeError(f"EARLYWORK_BACKEND must be 'compiled' or 'python', got {_forced!r}")

best_assignment = _impl.best_assignment
dp_fill = _impl.dp_fill


def backend_name() -> str:
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return _impl.BACKEND_NAME

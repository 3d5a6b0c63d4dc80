"""Hot-kernel backend selection.

The package ships a compiled extension (_fast, Cython) and a pure numpy
twin (pure) with identical entry points.  MUBCORR_BACKEND picks one:
"cython" or "python" force a side and fail loudly if unavailable;
"auto" (default) prefers the extension and falls back.
"""

from __future__ import annotations

import os

_choice = os.environ.get("MUBCORR_BACKEND", "auto").lower()
if _choice not in ("auto", "cython", "python"):
    raise ImportError(f'MUBCORR_BACKEND must be "auto", "cython" or "python", got {_choice!r}')

if _choice == "python":
    from mubcorr.kernels import pure as _impl
else:
    try:
        from mubcorr.kernels import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "cython":
            raise
        from mubcorr.kernels import pure as _impl

BACKEND_NAME: str = _impl.BACKEND_NAME
KIND_TUPLE: int = 0
KIND_PAIR: int = 1
KIND_MU_FIXED: int = 2

holevo_chi = _impl.holevo_chi
unitary_from_params = _impl.unitary_from_params
minimize = _impl.minimize

__all__ = [
    "BACKEND_NAME",
    "KIND_MU_FIXED",
    "KIND_PAIR",
    "KIND_TUPLE",
    "holevo_chi",
    "minimize",
    "unitary_from_params",
]

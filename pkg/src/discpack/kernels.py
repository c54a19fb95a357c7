"""Backend selection for the hot kernels.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
pure-Python ``_pykernels`` module is used.  Both expose ``corona_words`` and
``contact_pairs`` with identical signatures and output order.
"""

from __future__ import annotations

from . import _pykernels

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

_active = "compiled" if _ckernels is not None else "python"


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def active_backend() -> str:
    return _active


def use_backend(name: str) -> str:
    """Switch the active backend; returns the previous one."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} not available; have {available_backends()}")
    previous, _active = _active, name
    return previous


def corona_words(pair_angle, target, tol, max_len):
    return _BACKENDS[_active].corona_words(pair_angle, target, tol, max_len)


def contact_pairs(x, y, rho, shifts, reach):
    return _BACKENDS[_active].contact_pairs(x, y, rho, shifts, reach)

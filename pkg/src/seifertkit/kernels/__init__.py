"""Exhaustive table checkers with a compiled core and a pure-Python fallback.

The compiled extension ``_ckernels`` is used when it imports and the data
fits comfortably in int64; otherwise the pure-Python twin runs. Set
``SEIFERTKIT_PURE_PYTHON=1`` to force the fallback at import time.
"""

import os
from contextlib import contextmanager

import numpy as np

from . import _pykernels

try:
    if os.environ.get("SEIFERTKIT_PURE_PYTHON"):
        raise ImportError("pure-python backend forced")
    from . import _ckernels
except ImportError:
    _ckernels = None

#: magnitude cap for int64 dispatch; sums of products stay far from overflow
_INT_CAP = 1 << 28

_backend = "c" if _ckernels is not None else "python"


def backend():
    """Name of the active backend, ``"c"`` or ``"python"``."""
    return _backend


def available_backends():
    return ("c", "python") if _ckernels is not None else ("python",)


@contextmanager
def use_backend(name):
    """Temporarily switch backends (used by tests and the benchmark)."""
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available")
    old = _backend
    _backend = name
    try:
        yield
    finally:
        _backend = old


def _fits(*tables):
    for t in tables:
        for v in _flat(t):
            if not -_INT_CAP < v < _INT_CAP:
                return False
    return True


def _flat(t):
    if isinstance(t, np.ndarray):
        yield from (int(v) for v in t.flat)
    elif isinstance(t, (list, tuple)):
        for x in t:
            yield from _flat(x)
    else:
        yield int(t)


def _impl(*tables):
    if _backend == "c" and _fits(*tables):
        return _ckernels
    return None


def assoc_witness(mult):
    """First (a, b, c) with (ab)c != a(bc), or None."""
    if _impl() is not None and len(mult) < _INT_CAP:
        return _ckernels.assoc_witness(np.ascontiguousarray(mult, dtype=np.int64))
    return _pykernels.assoc_witness([list(r) for r in mult])


def cocycle_witness(mult, act, f, moduli):
    """First (a, b, c, i) violating the additive cocycle identity in coordinate i."""
    k = len(moduli)
    if k == 0:
        return None
    if _impl(act, f, moduli) is not None:
        return _ckernels.cocycle_witness(
            np.ascontiguousarray(mult, dtype=np.int64),
            np.ascontiguousarray(act, dtype=np.int64),
            np.ascontiguousarray(f, dtype=np.int64),
            np.ascontiguousarray(moduli, dtype=np.int64),
        )
    return _pykernels.cocycle_witness(_lists(mult), _lists(act), _lists(f), list(moduli))


def ext_assoc_witness(mult, act, f, moduli, box):
    """First (x, y, z, ia, ib, ic) where the extension product is not associative."""
    k = len(moduli)
    if k == 0 or len(box) == 0:
        return None
    if _impl(act, f, moduli, box) is not None:
        return _ckernels.ext_assoc_witness(
            np.ascontiguousarray(mult, dtype=np.int64),
            np.ascontiguousarray(act, dtype=np.int64),
            np.ascontiguousarray(f, dtype=np.int64),
            np.ascontiguousarray(moduli, dtype=np.int64),
            np.ascontiguousarray(box, dtype=np.int64),
        )
    return _pykernels.ext_assoc_witness(_lists(mult), _lists(act), _lists(f), list(moduli), _lists(box))


def theta_hom_witness(mult, act, f, lam, denom, perm_inv, box):
    """First (x, y, ia, ib) where theta fails to be multiplicative, or None.

    ``lam`` holds the cobounding tables scaled by ``denom`` to integers.
    """
    if _impl(act, f, lam, [denom], box) is not None:
        return _ckernels.theta_hom_witness(
            np.ascontiguousarray(mult, dtype=np.int64),
            np.ascontiguousarray(act, dtype=np.int64),
            np.ascontiguousarray(f, dtype=np.int64),
            np.ascontiguousarray(lam, dtype=np.int64),
            int(denom),
            np.ascontiguousarray(perm_inv, dtype=np.int64),
            np.ascontiguousarray(box, dtype=np.int64),
        )
    return _pykernels.theta_hom_witness(_lists(mult), _lists(act), _lists(f), _lists(lam),
                                        int(denom), _lists(perm_inv), _lists(box))


def _lists(t):
    if isinstance(t, np.ndarray):
        return t.tolist()
    if isinstance(t, (list, tuple)):
        return [_lists(x) for x in t]
    return int(t)

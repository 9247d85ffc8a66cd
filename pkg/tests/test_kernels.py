import random

import pytest
from hypothesis import given, settings, strategies as st

from seifertkit import kernels
from seifertkit.cohomology import random_cocycle
from seifertkit.groups import build_cyclic, build_direct_product, build_symmetric, sign_module, trivial_module

BACKENDS = kernels.available_backends()
needs_c = pytest.mark.skipif("c" not in BACKENDS, reason="compiled kernels not built")


def _both(fn, *args):
    out = []
    for name in BACKENDS:
        with kernels.use_backend(name):
            out.append(fn(*args))
    return out


def _group(rng):
    return rng.choice([build_cyclic(rng.randint(2, 6)), build_symmetric(3)[0],
                       build_direct_product(build_cyclic(2), build_cyclic(2))])


def _module(Q, rng):
    r = rng.random()
    if r < 0.3:
        return trivial_module(Q, 1, [rng.choice([2, 3, 4])])
    cyclic = any(Q.element_order(a) == Q.order for a in Q)
    if r < 0.6 and cyclic and Q.order % 2 == 0:
        # Z/2n acting on Z through its quotient Z/2
        return sign_module(Q, [(-1) ** a for a in Q])
    return trivial_module(Q, rng.randint(1, 2))


@needs_c
def test_backend_switch():
    assert kernels.backend() in BACKENDS
    with kernels.use_backend("python"):
        assert kernels.backend() == "python"
    with pytest.raises(ValueError):
        with kernels.use_backend("fortran"):
            pass


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_assoc_agrees(seed):
    rng = random.Random(seed)
    Q = _group(rng)
    mult = [list(r) for r in Q.mult]
    if rng.random() < 0.5:
        a, b = rng.randrange(1, Q.order), rng.randrange(1, Q.order)
        mult[a][b] = (mult[a][b] + 1) % Q.order
    res = _both(kernels.assoc_witness, mult)
    assert all(r == res[0] for r in res)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_cocycle_and_ext_assoc_agree(seed):
    rng = random.Random(seed)
    Q = _group(rng)
    A = _module(Q, rng)
    f = [[list(v) for v in row] for row in random_cocycle(A, rng).values]
    if rng.random() < 0.5:
        a, b = rng.randrange(1, Q.order), rng.randrange(1, Q.order)
        f[a][b][0] += 1
    box = [[x] + [0] * (A.rank - 1) for x in range(-2, 3)]
    moduli = list(A.moduli)
    res = _both(kernels.cocycle_witness, Q.mult, A.action, f, moduli)
    assert all(r == res[0] for r in res)
    res2 = _both(kernels.ext_assoc_witness, Q.mult, A.action, f, moduli, box)
    assert all(r == res2[0] for r in res2)
    # a valid cocycle gives an associative product
    if res[0] is None:
        assert res2[0] is None


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_theta_hom_agrees(seed):
    rng = random.Random(seed)
    Q = build_cyclic(rng.randint(2, 5))
    n = rng.randint(1, 3)
    perm_inv = [list(range(n)) for _ in Q]
    lam = [[[rng.randint(-3, 3)] for _ in range(n)] for _ in Q]
    lam[0] = [[0] for _ in range(n)]
    f = [[[rng.randint(-2, 2)] for _ in Q] for _ in Q]
    f[0] = [[0] for _ in Q]
    for row in f:
        row[0] = [0]
    act = [[[1]] for _ in Q]
    box = [[x] for x in range(-2, 3)]
    res = _both(kernels.theta_hom_witness, Q.mult, act, f, lam, rng.randint(1, 4), perm_inv, box)
    assert all(r == res[0] for r in res)


def test_python_fallback_on_large_values():
    Q = build_cyclic(2)
    big = 1 << 40
    f = [[[0], [0]], [[0], [big]]]
    # large entries always take the Python path
    assert kernels.cocycle_witness(Q.mult, [[[1]], [[1]]], f, [0]) is None

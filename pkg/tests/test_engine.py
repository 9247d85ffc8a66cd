import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from seifertkit.cochains import cochain2_from
from seifertkit.cohomology import random_cocycle
from seifertkit.engine import (
    EngineError, RigidityRegimeError, UniversalElement, conjugate_action, construct_theta, fiber_analysis,
    injectivity_check, pure_lam, strict_equiv, theta_hom_check_generic, translation, u_apply, u_compose,
    u_identity, u_inverse,
)
from seifertkit.extensions import ExtElement, elements, make_extension
from seifertkit.groups import (
    build_cyclic, build_symmetric, coset_action, cyclic_matrix_module, disjoint_union, sign_module,
    trivial_action, trivial_module, validate_action,
)
from support import random_rational

Z2 = build_cyclic(2)
SWAP = validate_action(Z2, [[0, 1], [1, 0]])


def test_apply_examples():
    e = UniversalElement([(Fraction(1, 2),), (Fraction(1, 2),)], [[-1]], [1, 0])
    assert u_apply(e, ((0,), 0)) == ((Fraction(-1, 2),), 1)
    assert u_apply(e, ((3,), 1)) == ((Fraction(-7, 2),), 0)
    t = translation((2, -1), 3)
    assert u_apply(t, ((0, 0), 2)) == ((2, -1), 2)


def test_element_validation():
    with pytest.raises(EngineError):
        UniversalElement([(0,)], [[0]], [0])
    with pytest.raises(EngineError):
        UniversalElement([(0,)], [[1]], [1])
    with pytest.raises(EngineError):
        UniversalElement([(0,), (0,)], [[1]], [0])


def _random_element(rng, k, n):
    while True:
        M = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(k)]
        try:
            perm = list(range(n))
            rng.shuffle(perm)
            return UniversalElement([random_rational(rng, k) for _ in range(n)], M, perm)
        except EngineError:
            continue


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 2), st.integers(1, 4))
def test_compose_is_action(seed, k, n):
    rng = random.Random(seed)
    e1, e2, e3 = (_random_element(rng, k, n) for _ in range(3))
    p = (random_rational(rng, k), rng.randrange(n))
    assert u_apply(u_compose(e1, e2), p) == u_apply(e1, u_apply(e2, p))
    assert u_compose(u_compose(e1, e2), e3) == u_compose(e1, u_compose(e2, e3))
    ident = u_identity(k, n)
    assert u_compose(e1, u_inverse(e1)) == ident == u_compose(u_inverse(e1), e1)


def test_construct_trivial_phi():
    # the odd class over Z2 acting on one point: theta(0, s)^2 is translation by 1
    A = trivial_module(Z2)
    E = make_extension(A, cochain2_from(A, {(1, 1): (1,)}))
    act = construct_theta(E, trivial_action(Z2, 1))
    assert act.lam_table(1) == ((Fraction(1, 2),),)
    s = act.theta(ExtElement((0,), 1))
    assert u_compose(s, s) == translation((1,), 1)
    assert act.report["cond1"] == act.report["homomorphism"] == act.report["translations"] == "pass"


def test_construct_sign_split():
    A = sign_module(Z2, [1, -1])
    act = construct_theta(make_extension(A), SWAP)
    # x -> -x + 1 on the swapped sheet
    assert act.apply(((1,), 1), ((0,), 0)) == ((1,), 1)
    assert act.apply(((1,), 1), ((2,), 1)) == ((-1,), 0)
    assert theta_hom_check_generic(act, 1)


def test_construct_rejects_invalid_cocycle():
    A = sign_module(Z2, [1, -1])
    E = make_extension(A)
    bad = cochain2_from(A, {(1, 1): (1,)})
    object.__setattr__(E, "f", bad)
    with pytest.raises(EngineError, match="cocycle invalid"):
        construct_theta(E, SWAP)


def test_construct_rejects_finite_module():
    E = make_extension(trivial_module(Z2, 1, [2]))
    with pytest.raises(EngineError):
        construct_theta(E, SWAP)


def test_fibers():
    Z4 = build_cyclic(4)
    A = trivial_module(Z4)
    E = make_extension(A, random_cocycle(A, random.Random(1)))
    rho = coset_action(Z4, [0, 2])
    rep = fiber_analysis(construct_theta(E, rho))
    assert len(rep.fibers) == 1 and len(rep.singular) == 1
    fib = rep.fibers[0]
    assert fib.stabilizer == (0, 2) and fib.extension.Q.order == 2
    free = fiber_analysis(construct_theta(E, coset_action(Z4, [0])))
    assert len(free.typical) == 1 and not free.singular


def test_injectivity_examples():
    Z4 = build_cyclic(4)
    sign = sign_module(Z4, [1, -1, 1, -1])
    chk = injectivity_check(sign, trivial_action(Z4, 1))
    assert not chk and chk.witness == (2,)
    assert not injectivity_check(sign, coset_action(Z4, [0, 2]))
    assert injectivity_check(sign, coset_action(Z4, [0]))
    assert injectivity_check(cyclic_matrix_module(Z4, [[0, -1], [1, 0]]), trivial_action(Z4, 1))
    assert not injectivity_check(trivial_module(Z2), trivial_action(Z2, 2))


def test_strict_equiv_recovers_conjugator():
    A = trivial_module(Z2)
    E = make_extension(A, cochain2_from(A, {(1, 1): (1,)}))
    act = construct_theta(E, SWAP)
    lam0 = ((Fraction(1, 3),), (Fraction(-2),))
    other = conjugate_action(act, lam0)
    found = strict_equiv(act, other)
    assert found is not None
    # lam0 is determined up to invariant constants
    c = found[0][0] - lam0[0][0]
    assert found[1][0] - lam0[1][0] == c


def test_strict_equiv_rigidity_regime():
    A = trivial_module(Z2)
    E = make_extension(A)
    with pytest.raises(RigidityRegimeError):
        strict_equiv(construct_theta(E, SWAP), construct_theta(E, trivial_action(Z2, 2)))


def test_pure_lam_is_conjugator():
    lam0 = ((Fraction(1, 2),), (3,))
    m = pure_lam(lam0)
    assert u_apply(m, ((1,), 1)) == ((-2,), 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_free_w_action_gives_free_action(seed):
    # spot-check: with every stabilizer trivial no nontrivial element fixes a sampled point
    rng = random.Random(seed)
    Q = build_symmetric(3)[0] if rng.random() < 0.3 else build_cyclic(rng.choice([2, 3, 4]))
    rho = disjoint_union(*[coset_action(Q, [0])] * rng.randint(1, 2))
    A = trivial_module(Q)
    E = make_extension(A, random_cocycle(A, rng))
    act = construct_theta(E, rho)
    assert injectivity_check(A, rho)
    for x in elements(E, 2):
        if x == E.identity:
            continue
        th = act.theta(x)
        for w in range(rho.npoints):
            p = (random_rational(rng, 1), w)
            assert u_apply(th, p) != p

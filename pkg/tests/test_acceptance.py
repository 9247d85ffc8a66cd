"""Acceptance gate: ten end-to-end criteria, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py`` (the summary lines are printed
at the end of the session) or directly with ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from support import random_q_set, random_rational  # noqa: E402
from seifertkit.cochains import (  # noqa: E402
    Cochain1, averaging_cobound, coboundary, cochain2_from, cohomologous, is_cocycle, matrix_group,
    principal_part,
)
from seifertkit.cohomology import h1_invariant_factors, h2_invariant_factors, h_order, random_cocycle  # noqa: E402
from seifertkit.engine import (  # noqa: E402
    RigidityRegimeError, cond1_check, conjugate_action, conjugation_check, construct_theta, fiber_analysis,
    lift_cocycle, strict_equiv, theta_hom_check,
)
from seifertkit.extensions import associativity_witness, make_extension, raw_product, torsion_profile  # noqa: E402
from seifertkit.groups import (  # noqa: E402
    build_cyclic, build_direct_product, build_symmetric, coset_action, cyclic_matrix_module, disjoint_union,
    matrix_module, sign_module, trivial_action, trivial_module, validate_action,
)
from seifertkit.heisenberg import (  # noqa: E402
    IDENTITY, action_is_left_mult, heis_mul, lattice_relations, random_point, to_matrix,
)
from seifertkit.invariants import SeifertSymbol, enumerate_symbols, euler_number, pushforward_class  # noqa: E402
from seifertkit.poly import identity_map, permutation_polymap, translation_polymap  # noqa: E402
from seifertkit.polyrep import (  # noqa: E402
    conjugacy_verify, conjugate_rep, construct_2step_rep, elementary_pairing, heisenberg_data, perturb,
    verify_rep, z_coefficients,
)

TIME_LIMIT = 10.0

pytestmark = pytest.mark.acceptance


def _timed(fn):
    start = time.perf_counter()
    fn()
    elapsed = time.perf_counter() - start
    assert elapsed < TIME_LIMIT, f"took {elapsed:.1f}s"


# ---------------------------------------------------------------------------
# 1

def criterion_1():
    for n in range(2, 9):
        A = trivial_module(build_cyclic(n))
        assert h2_invariant_factors(A) == [n] == oracles.cyclic_free_cohomology(n, [[1]], 2)
        assert h1_invariant_factors(A) == [] == oracles.cyclic_free_cohomology(n, [[1]], 1)
    S = sign_module(build_cyclic(2), [1, -1])
    assert h2_invariant_factors(S) == [] == oracles.cyclic_free_cohomology(2, [[-1]], 2)
    assert h1_invariant_factors(S) == [2] == oracles.cyclic_free_cohomology(2, [[-1]], 1)


# ---------------------------------------------------------------------------
# 2

def criterion_2():
    Q = build_cyclic(2)
    A = trivial_module(Q, 1, [2])
    tables = oracles.brute_cocycles(2, Q.mult, 2)
    exts = [make_extension(A, cochain2_from(A, {k: (v,) for k, v in t.items()})) for t in tables]
    classes = []
    for E in exts:
        if not any(cohomologous(E.f, C.f) is not None for C in classes):
            classes.append(E)
    assert len(classes) == 2 == h_order(h2_invariant_factors(A))
    profiles = sorted(max(torsion_profile(E)) for E in classes)
    assert profiles == [2, 4]


# ---------------------------------------------------------------------------
# 3

def _c3_modules(Q):
    n = Q.order
    mods = [trivial_module(Q), trivial_module(Q, 1, [3])]
    if n % 2 == 0:
        mods.append(sign_module(Q, [(-1) ** a for a in Q]))
    return mods


def criterion_3():
    rng = random.Random(3)
    injected = 0
    for n in range(1, 7):
        Q = build_cyclic(n)
        for A in _c3_modules(Q):
            for trial in range(200):
                kind = trial % 3
                if kind == 0 or n == 1:
                    f = random_cocycle(A, rng)
                elif kind == 1:
                    vals = {(a, b): (rng.randint(-2, 2),) for a in Q.nonidentity() for b in Q.nonidentity()}
                    f = cochain2_from(A, vals)
                else:
                    # single-entry injection into a valid cocycle
                    f = random_cocycle(A, rng)
                    a, b = rng.randrange(1, n), rng.randrange(1, n)
                    f = f.with_entry(a, b, A.add(f(a, b), (rng.choice([-2, -1, 1, 2]),)))
                ok = bool(is_cocycle(f))
                w = associativity_witness(A, f, 1)
                assert ok == (w is None), (n, f.values, w)
                if kind == 2 and not ok:
                    injected += 1
                    x, y, z = w
                    mul = raw_product(A, f)
                    assert mul(mul(x, y), z) != mul(x, mul(y, z))
    assert injected > 0


# ---------------------------------------------------------------------------
# 4

def _klein():
    Z2 = build_cyclic(2)
    return build_direct_product(Z2, Z2)


def _c4_case(rng):
    """A random (E, rho) with |Q| <= 6, |W| <= 6 and k <= 2."""
    choice = rng.randrange(4)
    if choice == 0:
        n = rng.randint(2, 6)
        Q = build_cyclic(n)
        mats = {1: [[1]], 2: [[-1]], 3: [[0, -1], [1, -1]], 4: [[0, -1], [1, 0]], 6: [[1, -1], [1, 0]]}
        options = [m for order, m in mats.items() if n % order == 0] + [[[1, 0], [0, 1]]]
        A = cyclic_matrix_module(Q, rng.choice(options))
    elif choice == 1:
        Q, elts = build_symmetric(3)
        signs = []
        for a in Q:
            p = elts[Q.labels[a]]
            inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
            signs.append((-1) ** inv)
        A = sign_module(Q, signs) if rng.random() < 0.5 else trivial_module(Q, rng.randint(1, 2))
    elif choice == 2:
        Q = _klein()
        diag = [[[(-1) ** (a // 2), 0], [0, (-1) ** (a % 2)]] for a in Q]
        A = matrix_module(Q, diag) if rng.random() < 0.5 else sign_module(Q, [(-1) ** (a // 2) for a in Q])
    else:
        Q = build_cyclic(rng.randint(2, 6))
        A = trivial_module(Q, rng.randint(1, 2))
    rho = random_q_set(Q, rng, 6)
    return make_extension(A, random_cocycle(A, rng)), rho


def criterion_4():
    rng = random.Random(4)
    for _ in range(100):
        E, rho = _c4_case(rng)
        assert E.Q.order <= 6 and rho.npoints <= 6 and E.module.rank <= 2
        # a genuinely function-valued cocycle: the lifted f plus a random coboundary
        F0 = lift_cocycle(E, rho)
        FM = F0.module
        mu = Cochain1(FM, (FM.zero,) + tuple(
            FM.flatten([random_rational(rng, E.module.rank) for _ in range(rho.npoints)])
            for _ in range(E.Q.order - 1)))
        F = F0 + coboundary(mu)
        assert is_cocycle(F)
        lam = averaging_cobound(F)
        assert coboundary(lam) == F
        assert cond1_check(F, lam)
        act = construct_theta(E, rho, 2)
        assert cond1_check(F0, act.lam)
        assert theta_hom_check(act, 2)
        assert act.report["pairs_checked"] == E.Q.order ** 2


# ---------------------------------------------------------------------------
# 5

def criterion_5():
    Z2 = build_cyclic(2)
    # x -> -x on Z, W = two fixed points plus one free orbit
    A = sign_module(Z2, [1, -1])
    E = make_extension(A)
    rho = disjoint_union(trivial_action(Z2, 2), coset_action(Z2, [0]))
    rep = fiber_analysis(construct_theta(E, rho))
    assert len(rep.fibers) == 3
    assert len(rep.singular) == 2 and len(rep.typical) == 1
    for fib in rep.singular:
        assert fib.stabilizer == (0, 1) and fib.extension.Q.order == 2
        assert fib.extension.f == E.f and fib.extension.module.action == A.action
    typ = rep.typical[0]
    assert typ.stabilizer == (0,) and typ.extension.Q.order == 1 and len(typ.orbit) == 2


# ---------------------------------------------------------------------------
# 6

def criterion_6():
    for p in range(1, 6):
        assert lattice_relations(p)
        rng = random.Random(p)
        assert action_is_left_mult(p, [random_point(rng) for _ in range(100)])
    rng = random.Random(6)
    from sympy import Matrix
    for _ in range(500):
        g, h = random_point(rng), random_point(rng)
        assert Matrix(to_matrix(heis_mul(g, h))) == oracles.heis_matrix(*g) * oracles.heis_matrix(*h)
    assert heis_mul(IDENTITY, IDENTITY) == IDENTITY


# ---------------------------------------------------------------------------
# 7

def criterion_7():
    for p in range(1, 11):
        assert euler_number(SeifertSymbol(1, p)) == -p
    count = 0
    for sym in enumerate_symbols(max_genus=2, max_cones=3, max_order=5, max_b=3, max_beta=3):
        count += 1
        e = euler_number(sym)
        L, push = pushforward_class(sym)
        assert push == L * e
        assert (e != 0) == (push != 0)
        if sym.b < 3:
            assert euler_number(SeifertSymbol(sym.g, sym.b + 1, sym.cones)) == e - 1
    assert count > 1000


# ---------------------------------------------------------------------------
# 8

def criterion_8():
    gens = [[[-1, 0], [0, -1]], [[0, -1], [1, -1]], [[0, -1], [1, 0]]]
    groups = [matrix_group([g]) for g in gens]
    assert sorted(Q.order for Q, _ in groups) == [2, 3, 4]
    rng = random.Random(8)
    for i in range(100):
        Q, R = groups[i % 3]
        d = random_rational(rng, 2)
        eta = Cochain1(R, tuple(R.sub(d, R.act(a, d)) for a in Q))
        d2 = principal_part(eta)
        assert all(eta(a) == R.sub(d2, R.act(a, d2)) for a in Q)


# ---------------------------------------------------------------------------
# 9

def criterion_9():
    from seifertkit.poly import Poly
    z, x, y = (Poly.var(3, i) for i in range(3))
    for p in range(1, 6):
        rep = construct_2step_rep(heisenberg_data(p))
        assert rep["alpha"].components == (z + y, x + 1, y)
        assert rep["beta"].components == (z, x, y + 1)
        assert rep["gamma"].components == (z + Fraction(1, p), x, y)
        assert verify_rep(rep)
    assert verify_rep(construct_2step_rep(elementary_pairing(3, 0, 1)))
    rng = random.Random(9)
    for p in range(1, 6):
        rep = construct_2step_rep(heisenberg_data(p))
        for gen, comp, exps in z_coefficients(rep, 1):
            # positive, so an own-coordinate coefficient never drops to 0 and the map stays invertible
            delta = Fraction(rng.randint(1, 3), rng.randint(1, 4))
            chk = verify_rep(perturb(rep, gen, comp, exps, delta))
            assert not chk and chk.condition in ("relator", "central") and chk.witness is not None
    rep = construct_2step_rep(heisenberg_data(3))
    t = translation_polymap([1, 0, 0])
    assert conjugacy_verify(rep, conjugate_rep(rep, t), t)
    assert conjugacy_verify(rep, rep, identity_map(3))
    assert not conjugacy_verify(rep, rep, permutation_polymap([0, 2, 1]))


# ---------------------------------------------------------------------------
# 10

def criterion_10():
    rng = random.Random(10)
    for _ in range(50):
        E, rho = _c4_case(rng)
        act = construct_theta(E, rho, 1)
        lam0 = tuple(random_rational(rng, E.module.rank) for _ in range(rho.npoints))
        other = conjugate_action(act, lam0)
        found = strict_equiv(act, other)
        assert found is not None
        assert conjugation_check(act, other, found, 1)
    Z2 = build_cyclic(2)
    E = make_extension(trivial_module(Z2))
    swap = validate_action(Z2, [[0, 1], [1, 0]])
    with pytest.raises(RigidityRegimeError):
        strict_equiv(construct_theta(E, swap), construct_theta(E, trivial_action(Z2, 2)))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n):
    _timed(CRITERIA[n - 1])


if __name__ == "__main__":
    failed = 0
    for i, fn in enumerate(CRITERIA, 1):
        start = time.perf_counter()
        try:
            fn()
            status = "PASS"
        except Exception as exc:  # noqa: BLE001
            status = f"FAIL ({type(exc).__name__}: {exc})"
            failed += 1
        print(f"criterion {i}: {status} [{time.perf_counter() - start:.2f}s]")
    sys.exit(1 if failed else 0)

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from seifertkit.groups import FpPresentation
from seifertkit.heisenberg import generator_action, random_point
from seifertkit.poly import (
    Poly, PolyError, PolyMap, affine_polymap, identity_map, permutation_polymap, poly_compose,
    polymap_from_json, polymap_to_json, translation_polymap, with_inverse,
)
from seifertkit.polyrep import (
    CentralSeriesSpec, TwoStepData, canonical_shape_check, conjugacy_verify, conjugate_rep, construct_2step_rep,
    elementary_pairing, heisenberg_data, perturb, verify_rep, z_coefficients,
)

HEIS_SERIES = CentralSeriesSpec((1, 2))


def xs(K):
    return [Poly.var(K, i) for i in range(K)]


def test_poly_arithmetic():
    z, x, y = xs(3)
    p = (x + y) ** 2 - x * x
    assert p == 2 * x * y + y * y
    assert p.degree == 2 and p.variables() == {1, 2}
    assert p((5, 1, 2)) == 8
    assert (x - x) == Poly(3)
    assert p.format(["z", "x", "y"]) in ("2*x*y + y^2", "y^2 + 2*x*y")


def test_compose_examples():
    z, x, y = xs(3)
    alpha = construct_2step_rep(heisenberg_data(1))["alpha"]
    beta = construct_2step_rep(heisenberg_data(1))["beta"]
    ab = poly_compose(alpha, beta)
    assert ab.components == (z + y + 1, x + 1, y + 1)
    assert poly_compose(alpha, identity_map(3)) == alpha == poly_compose(identity_map(3), alpha)
    A = [[2, 1], [1, 1]]
    C = [[1, 1], [0, 1]]
    m = poly_compose(affine_polymap(A, [1, 0]), affine_polymap(C, [0, 2]))
    # A (C v + d) + b = AC v + (A d + b)
    assert m == affine_polymap([[2, 3], [1, 2]], [3, 2])
    with pytest.raises(PolyError):
        poly_compose(identity_map(2), identity_map(3))


def _random_quadratic_map(rng, K):
    v = xs(K)
    monos = [Poly.const(K, 1)] + v + [v[i] * v[j] for i in range(K) for j in range(i, K)]
    comps = []
    for _ in range(K):
        comps.append(sum((rng.randint(-2, 2) * m for m in rng.sample(monos, 3)), Poly(K)))
    return PolyMap(tuple(comps))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 4))
def test_compose_associative(seed, K):
    rng = random.Random(seed)
    P, Q, R = (_random_quadratic_map(rng, K) for _ in range(3))
    assert poly_compose(poly_compose(P, Q), R) == poly_compose(P, poly_compose(Q, R))
    assert poly_compose(P, Q).degree <= P.degree * Q.degree
    pt = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(K))
    assert poly_compose(P, Q)(pt) == P(Q(pt))


def test_inverse_is_checked():
    z, x, y = xs(3)
    shear = with_inverse((z + x * y, x, y), (z - x * y, x, y))
    assert shear.inverse.components == (z - x * y, x, y)
    with pytest.raises(PolyError):
        with_inverse((z + x * y, x, y), (z + x * y, x, y))
    with pytest.raises(PolyError):
        PolyMap((z, x))


def test_canonical_shape():
    for K, series in ((3, HEIS_SERIES), (4, CentralSeriesSpec((2, 1, 1)))):
        assert canonical_shape_check(identity_map(K), series)
    for name, m in construct_2step_rep(heisenberg_data(3)).items():
        assert canonical_shape_check(m, HEIS_SERIES), name
    z, x, y = xs(3)
    chk = canonical_shape_check(PolyMap((z, x + z, y)), HEIS_SERIES)
    assert not chk and chk.witness[0] == 1
    # quadratic in its own block
    assert not canonical_shape_check(PolyMap((z, x, y + x * x)), HEIS_SERIES)
    # own-block linear part must be unimodular
    assert not canonical_shape_check(PolyMap((2 * z, x, y)), HEIS_SERIES)
    assert canonical_shape_check(PolyMap((-z + x * y, y, x)), HEIS_SERIES)


def test_abelian_data_gives_translations():
    data = TwoStepData(1, 3, (((0, 0, 0),) * 3,), (2,))
    rep = construct_2step_rep(data)
    K = data.K
    for i, (name, m) in enumerate(rep.items()):
        if i < 3:
            t = [0] * K
            t[1 + i] = 1
        else:
            t = [Fraction(1, 2), 0, 0, 0]
        assert m == translation_polymap(t), name


@pytest.mark.parametrize("p", range(1, 6))
def test_heisenberg_rep_matches_lattice_action(p):
    rep = construct_2step_rep(heisenberg_data(p))
    z, x, y = xs(3)
    assert rep["alpha"].components == (z + y, x + 1, y)
    assert rep["beta"].components == (z, x, y + 1)
    assert rep["gamma"].components == (z + Fraction(1, p), x, y)
    assert verify_rep(rep)
    assert rep["alpha"].degree <= 2
    rng = random.Random(p)
    for _ in range(100):
        q = random_point(rng)
        for name in ("alpha", "beta", "gamma"):
            assert rep[name](q) == generator_action(name, p, q)


def test_rank_one_three():
    data = elementary_pairing(3, 0, 1)
    rep = construct_2step_rep(data)
    assert verify_rep(rep)
    pres = rep.presentation
    words = [pres.format_word(w) for w in pres.relators]
    assert words[0] == "e1*e2*e1^-1*e2^-1*z1^-1"
    assert words[1] == "e1*e3*e1^-1*e3^-1" and words[2] == "e2*e3*e2^-1*e3^-1"
    for name, m in rep.items():
        assert canonical_shape_check(m, data.series()) and m.degree <= 2


def test_two_central_coordinates():
    B = (((0, 1, 0), (0, 0, 0), (0, 0, 0)), ((0, 0, 0), (0, 0, 2), (0, -1, 0)))
    rep = construct_2step_rep(TwoStepData(2, 3, B, (3, 1)))
    assert verify_rep(rep)


def test_trivial_presentation():
    pres = FpPresentation(("a",), (), ())
    assert verify_rep({"a": identity_map(2)}, pres)
    with pytest.raises(PolyError):
        verify_rep({}, pres)


def test_perturbing_central_coefficients_fails():
    rep = construct_2step_rep(heisenberg_data(2))
    coeffs = z_coefficients(rep, 1)
    assert len(coeffs) == 5
    for gen, comp, exps in coeffs:
        chk = verify_rep(perturb(rep, gen, comp, exps, Fraction(1, 3)))
        assert not chk, (gen, exps)


def test_x_term_on_alpha_still_verifies():
    # adding x to alpha's z-component stays a representation (a conjugate of the original)
    rep = construct_2step_rep(heisenberg_data(2))
    bumped = perturb(rep, "alpha", 0, (0, 1, 0), 1)
    assert bumped["alpha"] != rep["alpha"]
    assert verify_rep(bumped)
    z, x, y = xs(3)
    c = Fraction(-1, 2) * x * x + Fraction(1, 2) * x
    shear = with_inverse((z + c, x, y), (z - c, x, y))
    assert conjugacy_verify(rep, bumped, shear)


def test_conjugacy_examples():
    rep = construct_2step_rep(heisenberg_data(3))
    assert conjugacy_verify(rep, rep, identity_map(3))
    t = translation_polymap([1, 0, 0])
    assert conjugacy_verify(rep, conjugate_rep(rep, t), t)
    swap = permutation_polymap([0, 2, 1])
    chk = conjugacy_verify(rep, conjugate_rep(rep, t), swap)
    assert not chk and chk.witness == ("alpha",)
    assert not conjugacy_verify(rep, rep, swap)
    # any conjugate is again a representation, just not the target one
    assert verify_rep(conjugate_rep(rep, swap))
    with pytest.raises(PolyError):
        conjugacy_verify(rep, rep, PolyMap(tuple(xs(3))))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_conjugation_preserves_verification(seed):
    rng = random.Random(seed)
    rep = construct_2step_rep(heisenberg_data(rng.randint(1, 4)))
    z, x, y = xs(3)
    a, b, c = (rng.randint(-3, 3) for _ in range(3))
    cand = with_inverse((z + a * x * x + b * y + c * x * y, x + 1, y), (z - a * (x - 1) ** 2 - b * y - c * (x - 1) * y,
                                                                       x - 1, y))
    conj = conjugate_rep(rep, cand)
    assert verify_rep(conj)
    assert conjugacy_verify(rep, conj, cand)


def test_json_roundtrip():
    rep = construct_2step_rep(heisenberg_data(2))
    for _, m in rep.items():
        blob = json.loads(json.dumps(polymap_to_json(m)))
        back = polymap_from_json(blob)
        assert back == m and back.inverse == m.inverse
    bad = polymap_to_json(rep["alpha"])
    bad["inverse"] = bad["components"]
    with pytest.raises(PolyError, match="inverse"):
        polymap_from_json(bad)
    with pytest.raises(PolyError, match=r"components\[0\]"):
        polymap_from_json({"components": [{"monomials": [{"coef": "1/0", "exps": [0]}]}]})

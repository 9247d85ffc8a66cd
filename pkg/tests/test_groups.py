import pytest
from hypothesis import given, settings, strategies as st

from seifertkit.groups import (
    FpPresentation, GroupError, build_cyclic, build_dihedral, build_direct_product, build_symmetric,
    coset_action, disjoint_union, group_from_elements, is_homomorphism, orbits_and_stabilizers,
    seifert_presentation, sign_module, trivial_action, trivial_module, validate_action, validate_group,
    validate_module,
)
from seifertkit.invariants import SeifertSymbol


def test_cyclic_table():
    G = build_cyclic(5)
    assert G.order == 5
    assert G.mul(3, 4) == 2
    assert G.inverse(2) == 3
    assert G.element_order(1) == 5
    assert G.is_abelian()


def test_trivial_group():
    G = validate_group([[0]])
    assert G.order == 1 and G.inv == (0,)


def test_klein_and_symmetric():
    V = build_direct_product(build_cyclic(2), build_cyclic(2))
    assert sorted(V.element_order(a) for a in V) == [1, 2, 2, 2]
    S3, _ = build_symmetric(3)
    assert S3.order == 6 and not S3.is_abelian()
    D4 = build_dihedral(4)
    assert D4.order == 8 and not D4.is_abelian()


def test_identity_relabelled_to_zero():
    # identity is element 2 in the input
    mult = [[2, 0, 1], [0, 1, 2], [1, 2, 0]]
    G = validate_group(mult)
    assert G.labels[0] == 1
    assert all(G.mul(0, a) == a for a in G)


def test_non_square_table_rejected():
    with pytest.raises(GroupError) as exc:
        validate_group([[0, 1], [1]])
    assert exc.value.axiom == "table not square"


def test_non_associative_witness():
    # a Latin square with identity 0 that is not associative (order 5 loop)
    mult = [[0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError) as exc:
        validate_group(mult)
    assert exc.value.axiom == "not associative"
    a, b, c = exc.value.witness
    m = mult
    assert m[m[a][b]][c] != m[a][m[b][c]]


def test_missing_identity():
    with pytest.raises(GroupError) as exc:
        validate_group([[1, 0], [0, 0]])
    assert exc.value.axiom == "no identity"


def test_group_from_elements_and_homomorphism():
    G, elts = group_from_elements([0, 1, 2, 3], lambda a, b: (a + b) % 4)
    assert G.order == 4
    Z2 = build_cyclic(2)
    assert is_homomorphism(G, Z2, [elts[a] % 2 for a in G]) is None
    assert is_homomorphism(Z2, G, [0, 1]) is not None


def test_subgroup():
    G = build_cyclic(6)
    H, embed = G.subgroup([0, 2, 4])
    assert H.order == 3 and embed == (0, 2, 4)
    with pytest.raises(GroupError):
        G.subgroup([0, 1])


def test_modules():
    Z4 = build_cyclic(4)
    A = sign_module(Z4, [1, -1, 1, -1])
    assert A.act(1, (3,)) == (-3,)
    B = trivial_module(Z4, 1, [3])
    assert B.reduce((5,)) == (2,)
    assert B.is_finite and not B.is_free
    assert len(B.elements()) == 3
    with pytest.raises(GroupError) as exc:
        validate_module(Z4, 1, [0], [[[1]], [[2]], [[1]], [[1]]])
    assert exc.value.axiom in ("non-invertible matrix", "action not a homomorphism")
    with pytest.raises(GroupError) as exc:
        validate_module(build_cyclic(3), 1, [0], [[[1]], [[-1]], [[-1]]])
    assert exc.value.axiom == "action not a homomorphism"


def test_actions_orbits():
    Z2 = build_cyclic(2)
    rho = validate_action(Z2, [[0, 1, 2, 3], [1, 0, 2, 3]])
    orbits, stabs = orbits_and_stabilizers(rho)
    assert orbits == [(0, 1), (2,), (3,)]
    assert stabs[0] == (0,) and stabs[2] == (0, 1)
    with pytest.raises(GroupError):
        validate_action(Z2, [[0, 1], [0, 0]])
    Z6 = build_cyclic(6)
    act = disjoint_union(coset_action(Z6, [0, 3]), trivial_action(Z6, 1))
    orbits, stabs = orbits_and_stabilizers(act)
    assert [len(o) for o in orbits] == [3, 1]
    assert stabs[0] == (0, 3)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.data())
def test_cyclic_axioms(n, data):
    G = build_cyclic(n)
    a, b, c = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert G.mul(a, G.inverse(a)) == 0
    assert G.power(a, G.element_order(a)) == 0


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([2, 3, 4, 6]), st.sampled_from([2, 3]))
def test_coset_action_orbit_stabilizer(n, d):
    G = build_cyclic(n * d)
    H = [x for x in G if x % d == 0]
    act = coset_action(G, H)
    orbits, stabs = orbits_and_stabilizers(act)
    for orb in orbits:
        assert len(orb) * len(stabs[orb[0]]) == G.order


def test_seifert_presentation():
    P = seifert_presentation(SeifertSymbol(1, 2, ((2, 1),)))
    assert P.generators == ("x1", "y1", "w1", "z")
    assert P.relators[0] == (3, 3, 4)
    assert P.relators[1] == (3, 1, 2, -1, -2, -4, -4)
    assert P.central == (3,)
    assert P.format_word(P.relators[0]) == "w1*w1*z"
    assert seifert_presentation(SeifertSymbol(0, 0, ())).relators == ()


def test_presentation_rejects_bad_letters():
    with pytest.raises(ValueError):
        FpPresentation(("a",), ((2,),))

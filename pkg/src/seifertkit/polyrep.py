"""Canonical-type polynomial representations of two-step nilpotent lattices.

Coordinates are ordered central block first: ``(z_1..z_k1, t_1..t_k2)``.
A coset generator ``e_i`` acts by

    z_s -> z_s + sum_j B_s[i][j] t_j,   t -> t + e_i,

and a central generator ``z_s`` shifts ``z_s`` by ``1/d_s``.  Then
``[e_i, e_j] = prod_s z_s^((B_s[i][j] - B_s[j][i]) d_s)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intmat
from .cochains import Check, PASS
from .groups import FpPresentation
from .poly import Poly, PolyError, PolyMap, _plain, affine_polymap, identity_map, poly_compose


@dataclass(frozen=True)
class CentralSeriesSpec:
    """Block ranks ``k_1, ..., k_c``, innermost (central) block first."""

    ranks: tuple

    def __post_init__(self):
        ranks = tuple(int(k) for k in self.ranks)
        if not ranks or any(k < 0 for k in ranks):
            raise ValueError("ranks must be non-negative and non-empty")
        object.__setattr__(self, "ranks", ranks)

    @property
    def K(self):
        return sum(self.ranks)

    def cumulative(self):
        """``K_i = k_i + ... + k_c``."""
        return tuple(sum(self.ranks[i:]) for i in range(len(self.ranks)))

    def blocks(self):
        out, s = [], 0
        for k in self.ranks:
            out.append((s, s + k))
            s += k
        return out


def canonical_shape_check(P: PolyMap, series: CentralSeriesSpec) -> Check:
    """Each block is unimodular-linear in itself plus a polynomial in later blocks.

    The witness is ``(component, reason)``.
    """
    if P.dim != series.K:
        return Check(False, "dimension", (None, f"map has dimension {P.dim}, series {series.K}"))
    for lo, hi in series.blocks():
        M = []
        for c in range(lo, hi):
            row = [Fraction(0)] * (hi - lo)
            for e, coef in P.components[c].terms.items():
                own = [i for i in range(lo, hi) if e[i]]
                inner = [i for i in range(lo) if e[i]]
                if inner:
                    return Check(False, "canonical shape", (c, f"depends on an inner-block variable x{inner[0] + 1}"))
                if own:
                    if sum(e) != 1:
                        return Check(False, "canonical shape", (c, "nonlinear in its own block"))
                    row[own[0] - lo] = coef
            M.append(row)
        if any(x.denominator != 1 for r in M for x in r) or abs(intmat.det(M)) != 1:
            return Check(False, "canonical shape", (lo, "linear part of the block is not unimodular"))
    return PASS


# ---------------------------------------------------------------------------
# two-step data

@dataclass(frozen=True)
class TwoStepData:
    k1: int
    k2: int
    B: tuple
    denom: tuple

    def __post_init__(self):
        B = tuple(tuple(tuple(int(x) for x in r) for r in M) for M in self.B)
        if len(B) != self.k1 or any(len(M) != self.k2 or any(len(r) != self.k2 for r in M) for M in B):
            raise ValueError(f"B must hold {self.k1} matrices of size {self.k2}x{self.k2}")
        denom = tuple(int(d) for d in self.denom)
        if len(denom) != self.k1 or any(d < 1 for d in denom):
            raise ValueError(f"denom must hold {self.k1} positive integers")
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "denom", denom)

    @property
    def K(self):
        return self.k1 + self.k2

    def series(self):
        return CentralSeriesSpec((self.k1, self.k2))

    def to_json(self):
        return {"k1": self.k1, "k2": self.k2, "B": [[list(r) for r in M] for M in self.B], "denom": list(self.denom)}


def heisenberg_data(p) -> TwoStepData:
    return TwoStepData(1, 2, (((0, 1), (0, 0)),), (p,))


def elementary_pairing(k2, i, j, d=1) -> TwoStepData:
    """Rank (1, k2) data whose only nontrivial commutator is ``[e_i, e_j]`` (0-based)."""
    B = [[0] * k2 for _ in range(k2)]
    B[i][j] = 1
    return TwoStepData(1, k2, (tuple(map(tuple, B)),), (d,))


@dataclass(frozen=True)
class Representation:
    """Generator maps in presentation order."""

    presentation: FpPresentation
    maps: tuple
    series: CentralSeriesSpec = None

    def __getitem__(self, name):
        return self.maps[self.presentation.index(name)]

    def items(self):
        return zip(self.presentation.generators, self.maps)


def default_names(data: TwoStepData):
    if (data.k1, data.k2) == (1, 2):
        return ("alpha", "beta"), ("gamma",)
    return tuple(f"e{i + 1}" for i in range(data.k2)), tuple(f"z{s + 1}" for s in range(data.k1))


def two_step_presentation(data: TwoStepData, names=None) -> FpPresentation:
    coset, central = names or default_names(data)
    gens = tuple(coset) + tuple(central)
    ix = {n: i + 1 for i, n in enumerate(gens)}
    rels = []
    for i in range(data.k2):
        for j in range(i + 1, data.k2):
            a, b = ix[coset[i]], ix[coset[j]]
            word = [a, b, -a, -b]
            for s in range(data.k1):
                c = (data.B[s][i][j] - data.B[s][j][i]) * data.denom[s]
                z = ix[central[s]]
                word += [-z if c > 0 else z] * abs(c)
            rels.append(tuple(word))
    for s in range(data.k1):
        z = ix[central[s]]
        for g in gens:
            if g != central[s] and (g not in central or central.index(g) > s):
                rels.append((z, ix[g], -z, -ix[g]))
    k = len(coset)
    return FpPresentation(gens, tuple(rels), tuple(range(k, k + data.k1)))


def construct_2step_rep(data: TwoStepData, names=None) -> Representation:
    """Build the generator maps and verify them against their presentation."""
    K = data.K
    xs = [Poly.var(K, v) for v in range(K)]
    k1 = data.k1
    maps = []
    for i in range(data.k2):
        fwd, bwd = [], []
        for s in range(k1):
            lin = sum((data.B[s][i][j] * xs[k1 + j] for j in range(data.k2)), Poly(K))
            fwd.append(xs[s] + lin)
            # inverse: t -> t - e_i first, then z -> z - B_s[i] . t
            bwd.append(xs[s] - lin + data.B[s][i][i])
        for j in range(data.k2):
            fwd.append(xs[k1 + j] + (1 if j == i else 0))
            bwd.append(xs[k1 + j] - (1 if j == i else 0))
        maps.append(PolyMap(tuple(fwd), tuple(bwd)))
    for s in range(k1):
        shift = [Fraction(0)] * K
        shift[s] = Fraction(1, data.denom[s])
        maps.append(PolyMap(tuple(x + c for x, c in zip(xs, shift)), tuple(x - c for x, c in zip(xs, shift))))
    pres = two_step_presentation(data, names)
    rep = Representation(pres, tuple(maps), data.series())
    for name, m in rep.items():
        chk = canonical_shape_check(m, rep.series)
        if not chk:
            raise AssertionError(f"internal: generator {name} not canonical: {chk.witness}")
    chk = verify_rep(rep)
    if not chk:
        raise ValueError(f"inconsistent data: relator {chk.witness[1]} fails")
    return rep


# ---------------------------------------------------------------------------
# verification

def evaluate_word(maps, word, K):
    """The composite ``g_1 o g_2 o ... o g_n`` of a word of signed indices."""
    out = identity_map(K)
    for s in word:
        m = maps[abs(s) - 1]
        if s < 0:
            if not m.has_inverse:
                raise PolyError(f"generator {abs(s)} has no stored inverse")
            m = m.inverse
        out = poly_compose(out, m)
    return out


def _as_rep(rep, pres):
    if isinstance(rep, Representation):
        return rep
    if isinstance(rep, dict):
        missing = [g for g in pres.generators if g not in rep]
        if missing:
            raise PolyError(f"unassigned generator {missing[0]!r}")
        return Representation(pres, tuple(rep[g] for g in pres.generators))
    return Representation(pres, tuple(rep))


def verify_rep(rep, pres: FpPresentation = None) -> Check:
    """Every relator composes to the identity and central generators commute.

    The witness is ``(relator index, formatted relator)``; a centrality
    failure reports ``(None, "[c,g]")``.
    """
    pres = pres or rep.presentation
    rep = _as_rep(rep, pres)
    maps = rep.maps
    if len(maps) != len(pres.generators):
        raise PolyError("unassigned generator")
    K = maps[0].dim if maps else 0
    ident = identity_map(K)
    for m in maps:
        if not m.has_inverse:
            raise PolyError("every generator needs a stored inverse")
    for r, word in enumerate(pres.relators):
        if evaluate_word(maps, word, K) != ident:
            return Check(False, "relator", (r, pres.format_word(word)))
    for c in pres.central:
        for g in range(len(maps)):
            if poly_compose(maps[c], maps[g]) != poly_compose(maps[g], maps[c]):
                return Check(False, "central", (None, f"[{pres.generators[c]},{pres.generators[g]}]"))
    return PASS


def conjugate_rep(rep: Representation, cand: PolyMap) -> Representation:
    """``g -> cand^-1 o rep(g) o cand``."""
    if not cand.has_inverse:
        raise PolyError("conjugating map needs a stored inverse")
    ci = cand.inverse
    return Representation(rep.presentation, tuple(poly_compose(poly_compose(ci, m), cand) for m in rep.maps),
                          rep.series)


def conjugacy_verify(rep1: Representation, rep2: Representation, cand: PolyMap) -> Check:
    """``cand^-1 o rep1(g) o cand == rep2(g)`` for every generator; witness is its name."""
    conj = conjugate_rep(rep1, cand)
    for (name, m), m2 in zip(conj.items(), rep2.maps):
        if m != m2:
            return Check(False, "conjugacy", (name,))
    return PASS


def perturb(rep: Representation, gen, component, exps, delta) -> Representation:
    """Add ``delta`` to one coefficient of one generator (inverse recomputed if affine)."""
    i = rep.presentation.index(gen)
    m = rep.maps[i]
    comps = list(m.components)
    K = m.dim
    comps[component] = comps[component] + Poly(K, {tuple(exps): delta})
    new = _affine_with_inverse(comps)
    maps = list(rep.maps)
    maps[i] = new
    return Representation(rep.presentation, tuple(maps), rep.series)


def _affine_with_inverse(comps):
    K = len(comps)
    if any(p.degree > 1 for p in comps):
        return _plain(comps)
    A = [[p.coeff([int(t == j) for t in range(K)]) for j in range(K)] for p in comps]
    b = [p.coeff([0] * K) for p in comps]
    if intmat.det(A) == 0:
        return _plain(comps)
    return affine_polymap(A, b)


def z_coefficients(rep: Representation, k1):
    """``(generator, component, exps)`` for every coefficient in a central-block component."""
    out = []
    for name, m in rep.items():
        for c in range(k1):
            for e, _ in m.components[c].sorted_terms():
                out.append((name, c, e))
    return out

"""Finite groups as multiplication tables, coefficient modules, permutation
actions and finite presentations.

Elements of a :class:`FiniteGroup` are the integers ``0 .. order-1`` and
``0`` is always the identity.  Coefficient modules are finitely generated
abelian groups ``Z^k / (m_1, ..., m_k)`` written additively, with ``m_i = 0``
meaning an infinite cyclic factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import kernels


class GroupError(ValueError):
    """A table or action failed one of the group axioms.

    ``axiom`` names the failed law and ``witness`` carries the offending
    elements.
    """

    def __init__(self, axiom, witness=None, message=None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"{axiom} (witness {witness})")


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    mult: tuple
    inv: tuple
    #: labels[i] is the caller's index of canonical element i
    labels: tuple = None
    name: str = ""

    identity = 0

    def __post_init__(self):
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(self.order)))

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mult == other.mult

    def __hash__(self):
        return hash(self.mult)

    def __repr__(self):
        return f"FiniteGroup({self.name or self.order})"

    def mul(self, a, b):
        return self.mult[a][b]

    def inverse(self, a):
        return self.inv[a]

    def product(self, *elts):
        r = 0
        for e in elts:
            r = self.mult[r][e]
        return r

    def power(self, a, n):
        if n < 0:
            a, n = self.inv[a], -n
        r = 0
        for _ in range(n):
            r = self.mult[r][a]
        return r

    def element_order(self, a):
        r, n = a, 1
        while r != 0:
            r = self.mult[r][a]
            n += 1
        return n

    def is_abelian(self):
        return all(self.mult[a][b] == self.mult[b][a] for a in self for b in self)

    def nonidentity(self):
        return range(1, self.order)

    def subgroup(self, elements):
        """Return ``(H, embed)`` for a subgroup given by a set of elements.

        ``embed[i]`` is the element of ``self`` corresponding to element ``i``
        of ``H``; identity first, remaining elements in increasing order.
        """
        elts = sorted(set(elements))
        if 0 not in elts:
            raise GroupError("subgroup must contain the identity", tuple(elts))
        pos = {e: i for i, e in enumerate(elts)}
        try:
            mult = tuple(tuple(pos[self.mult[a][b]] for b in elts) for a in elts)
        except KeyError:
            raise GroupError("subset not closed under multiplication", tuple(elts)) from None
        inv = tuple(pos[self.inv[a]] for a in elts)
        return FiniteGroup(len(elts), mult, inv, name=f"sub({self.name})"), tuple(elts)

    def to_json(self):
        return {"order": self.order, "mult": [list(r) for r in self.mult]}


def validate_group(mult: Sequence[Sequence[int]], name="") -> FiniteGroup:
    """Check the group axioms on a square table and canonicalize it.

    If the identity is not element 0 it is swapped into position 0; the
    returned group's ``labels`` record the caller's original indices.
    Raises :class:`GroupError` naming the failed axiom and a witness.
    """
    n = len(mult)
    if n == 0:
        raise GroupError("empty table", None, "mult: table must be non-empty")
    for i, row in enumerate(mult):
        if len(row) != n:
            raise GroupError("table not square", (i,), f"mult: row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise GroupError("entry out of range", (i, j), f"mult[{i}][{j}] = {v!r} is not an element index")
    e = next((c for c in range(n)
              if all(mult[c][x] == x and mult[x][c] == x for x in range(n))), None)
    if e is None:
        raise GroupError("no identity", None, "no identity: no element is a two-sided identity")
    bad = kernels.assoc_witness([list(r) for r in mult])
    if bad is not None:
        raise GroupError("not associative", tuple(bad))
    inv = []
    for a in range(n):
        b = next((b for b in range(n) if mult[a][b] == e and mult[b][a] == e), None)
        if b is None:
            raise GroupError("missing inverse", (a,))
        inv.append(b)
    # canonicalize: swap e <-> 0
    relabel = list(range(n))
    relabel[0], relabel[e] = e, 0
    new = tuple(tuple(relabel[mult[relabel[a]][relabel[b]]] for b in range(n)) for a in range(n))
    new_inv = tuple(relabel[inv[relabel[a]]] for a in range(n))
    return FiniteGroup(n, new, new_inv, tuple(relabel), name)


def build_cyclic(n: int) -> FiniteGroup:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclic group order must be a positive integer, got {n!r}")
    mult = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(n, mult, tuple((-i) % n for i in range(n)), name=f"Z{n}")


def group_from_elements(elements, op, name=""):
    """Close ``elements`` under ``op`` and tabulate; identity must be derivable.

    ``elements`` must be hashable and contain the identity first.
    """
    elts = list(dict.fromkeys(elements))
    index = {x: i for i, x in enumerate(elts)}
    i = 0
    while i < len(elts):
        for j in range(len(elts)):
            for p in (op(elts[i], elts[j]), op(elts[j], elts[i])):
                if p not in index:
                    index[p] = len(elts)
                    elts.append(p)
        i += 1
    mult = [[index[op(a, b)] for b in elts] for a in elts]
    return validate_group(mult, name), elts


def build_direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    pairs = [(g, h) for g in G for h in H]
    pos = {p: i for i, p in enumerate(pairs)}
    mult = tuple(tuple(pos[(G.mult[a][c], H.mult[b][d])] for (c, d) in pairs) for (a, b) in pairs)
    inv = tuple(pos[(G.inv[a], H.inv[b])] for (a, b) in pairs)
    return FiniteGroup(len(pairs), mult, inv, name=f"{G.name}x{H.name}")


def compose_perm(p, q):
    """p after q."""
    return tuple(p[i] for i in q)


def invert_perm(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def build_symmetric(n):
    """The symmetric group on n points; element i is ``G.perms[i]``."""
    ident = tuple(range(n))
    gens = [ident] + [p for p in itertools.permutations(range(n)) if p != ident]
    G, elts = group_from_elements(gens, compose_perm, name=f"S{n}")
    return G, elts


def build_dihedral(n):
    """Dihedral group of order 2n, elements (rotation r, flip s) with s r s = r^-1."""
    elts = [(r, s) for s in (0, 1) for r in range(n)]

    def op(x, y):
        r1, s1 = x
        r2, s2 = y
        return ((r1 + (-r2 if s1 else r2)) % n, (s1 + s2) % 2)

    G, _ = group_from_elements(elts, op, name=f"D{n}")
    return G


def is_homomorphism(G: FiniteGroup, H: FiniteGroup, rho):
    """Return None if ``rho`` (table G -> H) is a homomorphism, else a witness pair."""
    if len(rho) != G.order:
        return ("length", len(rho))
    for a in G:
        for b in G:
            if rho[G.mult[a][b]] != H.mult[rho[a]][rho[b]]:
                return (a, b)
    return None


# ---------------------------------------------------------------------------
# coefficient modules

def _matmul(A, B):
    return tuple(tuple(sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))) for i in range(len(A)))


def _identity(k):
    return tuple(tuple(int(i == j) for j in range(k)) for i in range(k))


@dataclass(frozen=True, eq=False)
class CoefModule:
    """``A = Z^k / diag(moduli)`` with ``Q`` acting through integer matrices."""

    group: FiniteGroup
    rank: int
    moduli: tuple
    action: tuple

    def __eq__(self, other):
        return (isinstance(other, CoefModule) and self.group == other.group
                and self.moduli == other.moduli and self.action == other.action)

    def __hash__(self):
        return hash((self.moduli, self.action))

    @property
    def is_free(self):
        return all(m == 0 for m in self.moduli)

    @property
    def is_finite(self):
        return all(m > 0 for m in self.moduli)

    @property
    def zero(self):
        return (0,) * self.rank

    def reduce(self, v):
        return tuple(x % m if m else x for x, m in zip(v, self.moduli))

    def add(self, u, v):
        return self.reduce(tuple(a + b for a, b in zip(u, v)))

    def sub(self, u, v):
        return self.reduce(tuple(a - b for a, b in zip(u, v)))

    def neg(self, u):
        return self.reduce(tuple(-a for a in u))

    def act(self, alpha, v):
        M = self.action[alpha]
        return self.reduce(tuple(sum(M[i][j] * v[j] for j in range(self.rank)) for i in range(self.rank)))

    def coerce(self, v):
        v = tuple(v)
        if len(v) != self.rank or not all(isinstance(x, int) for x in v):
            raise ValueError(f"expected an integer vector of length {self.rank}, got {v!r}")
        return self.reduce(v)

    def elements(self):
        if not self.is_finite:
            raise ValueError("module is infinite")
        return list(itertools.product(*(range(m) for m in self.moduli)))

    def cardinality(self):
        if not self.is_finite:
            return 0
        n = 1
        for m in self.moduli:
            n *= m
        return n

    def to_json(self):
        return {"rank": self.rank, "moduli": list(self.moduli),
                "action": {str(a): [list(r) for r in self.action[a]] for a in self.group}}


def _mat_equiv(A, B, moduli):
    return all((A[i][j] - B[i][j]) % m == 0 if m else A[i][j] == B[i][j]
               for i, m in enumerate(moduli) for j in range(len(moduli)))


def validate_module(Q: FiniteGroup, rank, moduli, action) -> CoefModule:
    """Validate raw module data; ``action`` maps each element of Q to a k x k matrix.

    Checks that each matrix respects the moduli (so it induces an
    endomorphism of A), that the identity acts trivially, and that the
    action is a homomorphism; together these make every matrix invertible
    on A.  Errors carry the offending element or pair.
    """
    moduli = tuple(int(m) for m in moduli)
    if len(moduli) != rank or any(m < 0 for m in moduli):
        raise GroupError("bad moduli", moduli, f"moduli: expected {rank} non-negative integers")
    if isinstance(action, dict):
        action = [action[a] for a in range(Q.order)]
    if len(action) != Q.order:
        raise GroupError("action not total", None, f"action: need one matrix per element of Q ({Q.order})")
    mats = []
    for a, M in enumerate(action):
        M = tuple(tuple(int(x) for x in row) for row in M)
        if len(M) != rank or any(len(r) != rank for r in M):
            raise GroupError("matrix shape", (a,), f"action[{a}] is not {rank}x{rank}")
        for i, mi in enumerate(moduli):
            for j, mj in enumerate(moduli):
                # column j carries mj*e_j, which must vanish in coordinate i
                if mi == 0 and mj != 0 and M[i][j] != 0:
                    raise GroupError("non-invertible matrix", (a,), f"action[{a}] does not respect moduli at ({i},{j})")
                if mi and (M[i][j] * mj) % mi:
                    raise GroupError("non-invertible matrix", (a,), f"action[{a}] does not respect moduli at ({i},{j})")
        mats.append(tuple(tuple(x % m if m else x for x in row) for row, m in zip(M, moduli)))
    if not _mat_equiv(mats[0], _identity(rank), moduli):
        raise GroupError("non-invertible matrix", (0,), "identity of Q must act trivially")
    for a in Q:
        for b in Q:
            if not _mat_equiv(mats[Q.mult[a][b]], _matmul(mats[a], mats[b]), moduli):
                raise GroupError("action not a homomorphism", (a, b))
    return CoefModule(Q, rank, moduli, tuple(mats))


def trivial_module(Q, rank=1, moduli=None):
    moduli = tuple(moduli) if moduli is not None else (0,) * rank
    return validate_module(Q, rank, moduli, [_identity(rank)] * Q.order)


def sign_module(Q, signs):
    """Rank-one ``Z`` with Q acting by the +-1 character ``signs``."""
    return validate_module(Q, 1, (0,), [((s,),) for s in signs])


def matrix_module(Q, mats, moduli=None):
    k = len(mats[0])
    return validate_module(Q, k, moduli if moduli is not None else (0,) * k, mats)


def cyclic_matrix_module(Q, M):
    """Module over a cyclic Q = Z_n with the generator 1 acting by M (M^n = I)."""
    k = len(M)
    mats = [_identity(k)]
    for _ in range(1, Q.order):
        mats.append(_matmul(M, mats[-1]))
    return validate_module(Q, k, (0,) * k, mats)


# ---------------------------------------------------------------------------
# permutation actions

@dataclass(frozen=True)
class PermAction:
    group: FiniteGroup
    npoints: int
    perm: tuple

    def apply(self, alpha, w):
        return self.perm[alpha][w]

    def inverse_perm(self, alpha):
        return invert_perm(self.perm[alpha])

    def to_json(self):
        return {"perm": {str(a): list(self.perm[a]) for a in self.group}}


def validate_action(Q: FiniteGroup, perm) -> PermAction:
    if isinstance(perm, dict):
        perm = [perm[a] for a in range(Q.order)]
    if len(perm) != Q.order:
        raise GroupError("action not total", None, f"perm: need one permutation per element of Q ({Q.order})")
    perm = tuple(tuple(int(x) for x in p) for p in perm)
    n = len(perm[0])
    for a, p in enumerate(perm):
        if sorted(p) != list(range(n)):
            raise GroupError("not a permutation", (a,), f"perm[{a}] is not a permutation of {n} points")
    if perm[0] != tuple(range(n)):
        raise GroupError("identity moves points", (0,))
    for a in Q:
        for b in Q:
            if perm[Q.mult[a][b]] != compose_perm(perm[a], perm[b]):
                raise GroupError("action not a homomorphism", (a, b))
    return PermAction(Q, n, perm)


def trivial_action(Q, n):
    return PermAction(Q, n, (tuple(range(n)),) * Q.order)


def coset_action(Q: FiniteGroup, subgroup_elements):
    """Left action of Q on the left cosets of a subgroup H."""
    H = sorted(set(subgroup_elements))
    cosets = []
    seen = {}
    for g in Q:
        if g in seen:
            continue
        c = frozenset(Q.mult[g][h] for h in H)
        for x in c:
            seen[x] = len(cosets)
        cosets.append(c)
    perm = tuple(tuple(seen[Q.mult[a][min(c)]] for c in cosets) for a in Q)
    return PermAction(Q, len(cosets), perm)


def disjoint_union(*actions):
    Q = actions[0].group
    perm = []
    for a in Q:
        p, off = [], 0
        for act in actions:
            p.extend(off + x for x in act.perm[a])
            off += act.npoints
        perm.append(tuple(p))
    return PermAction(Q, sum(a.npoints for a in actions), tuple(perm))


def orbits_and_stabilizers(act: PermAction):
    """Return ``(orbits, stabilizers)``.

    ``orbits`` is a list of sorted point tuples partitioning W, ordered by
    least point; ``stabilizers[w]`` is the tuple of elements fixing w.
    """
    Q = act.group
    orbits, seen = [], set()
    for w in range(act.npoints):
        if w in seen:
            continue
        orb = tuple(sorted({act.perm[a][w] for a in Q}))
        seen.update(orb)
        orbits.append(orb)
    stabs = [tuple(a for a in Q if act.perm[a][w] == w) for w in range(act.npoints)]
    return orbits, stabs


# ---------------------------------------------------------------------------
# finite presentations

@dataclass(frozen=True)
class FpPresentation:
    """Generators by name; relators are words of signed 1-based generator indices."""

    generators: tuple
    relators: tuple = ()
    central: tuple = ()

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relators:
            for s in r:
                if s == 0 or abs(s) > n:
                    raise ValueError(f"relator {r} references undeclared generator {s}")
        for c in self.central:
            if not 0 <= c < n:
                raise ValueError(f"central marker {c} out of range")

    def index(self, name):
        return self.generators.index(name)

    def word(self, *pieces):
        """Build a word from ``(name, exponent)`` pairs."""
        out = []
        for name, e in pieces:
            g = self.generators.index(name) + 1
            out.extend([g if e > 0 else -g] * abs(e))
        return tuple(out)

    def format_word(self, word):
        out = []
        for s in word:
            g = self.generators[abs(s) - 1]
            out.append(g if s > 0 else g + "^-1")
        return "*".join(out) or "1"

    def to_json(self):
        return {"generators": list(self.generators),
                "relators": [list(r) for r in self.relators],
                "central": [self.generators[c] for c in self.central]}


def _pow(g, e):
    return [g if e > 0 else -g] * abs(e)


def seifert_presentation(sym) -> FpPresentation:
    """Presentation of the Seifert orbifold group of a symbol (g; b; (a_j, b_j)).

    Relators: ``w_j^{a_j} z^{b_j}`` for each cone point and
    ``w_1...w_p [x_1,y_1]...[x_g,y_g] z^{-b}``; ``z`` is marked central.
    """
    g, b, cones = sym.g, sym.b, sym.cones
    for a, _ in cones:
        if a < 2:
            raise ValueError(f"cone order must be >= 2, got {a}")
    names = []
    for i in range(1, g + 1):
        names += [f"x{i}", f"y{i}"]
    names += [f"w{j}" for j in range(1, len(cones) + 1)] + ["z"]
    ix = {n: i + 1 for i, n in enumerate(names)}
    z = ix["z"]
    rels = []
    for j, (a, be) in enumerate(cones, 1):
        rels.append(tuple(_pow(ix[f"w{j}"], a) + _pow(z, be)))
    if g or cones or b:
        long = [ix[f"w{j}"] for j in range(1, len(cones) + 1)]
        for i in range(1, g + 1):
            x, y = ix[f"x{i}"], ix[f"y{i}"]
            long += [x, y, -x, -y]
        long += _pow(z, -b)
        rels.append(tuple(long))
    return FpPresentation(tuple(names), tuple(rels), (len(names) - 1,))


__all__ = [
    "GroupError", "FiniteGroup", "validate_group", "build_cyclic", "build_direct_product",
    "build_symmetric", "build_dihedral", "group_from_elements", "is_homomorphism",
    "CoefModule", "validate_module", "trivial_module", "sign_module", "matrix_module",
    "cyclic_matrix_module", "PermAction", "validate_action", "trivial_action", "coset_action",
    "disjoint_union", "orbits_and_stabilizers", "FpPresentation", "seifert_presentation",
    "compose_perm", "invert_perm",
]

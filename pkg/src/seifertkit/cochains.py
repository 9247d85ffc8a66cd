"""Normalized cochains of a finite group, written additively.

Three kinds of coefficient module share one duck-typed interface
(``group``, ``rank``, ``zero``, ``add``, ``sub``, ``neg``, ``act``,
``reduce``, ``matrix``):

* :class:`~seifertkit.groups.CoefModule` -- integer vectors modulo moduli;
* :class:`RationalModule` -- ``Q^k`` with rational action matrices;
* :class:`FunctionModule` -- maps ``W -> Q^k`` with the twisted action
  ``(alpha . lam)(w) = phi(alpha) lam(rho(alpha)^-1 w)``.

Coboundaries follow ``d lam(a, b) = lam(a) + a.lam(b) - lam(ab)`` and the
2-cocycle identity is ``f(a,b) + f(ab,c) = a.f(b,c) + f(a,bc)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intmat, kernels
from .groups import CoefModule, FiniteGroup, GroupError, PermAction, group_from_elements, invert_perm


class CochainError(ValueError):
    pass


# ---------------------------------------------------------------------------
# rational modules

def _fmat(M):
    return tuple(tuple(Fraction(x) for x in row) for row in M)


def _mat_mul(A, B):
    n = len(B)
    return tuple(tuple(sum(A[i][t] * B[t][j] for t in range(n)) for j in range(len(B[0]))) for i in range(len(A)))


def _sparse_rows(M):
    """Nonzero entries ``(j, c)`` per row, with integral c stored as int for speed."""
    return tuple(tuple((j, int(c) if c.denominator == 1 else c) for j, c in enumerate(map(Fraction, row)) if c)
                 for row in M)


def _dot(row, v, offset):
    acc = Fraction(0)
    for j, c in row:
        x = v[offset + j]
        acc += x if c == 1 else -x if c == -1 else c * x
    return acc


@dataclass(frozen=True, eq=False)
class RationalModule:
    group: FiniteGroup
    rank: int
    action: tuple

    moduli = property(lambda self: (0,) * self.rank)
    is_free = True
    is_finite = False

    def __post_init__(self):
        object.__setattr__(self, "_sparse", tuple(_sparse_rows(M) for M in self.action))

    @property
    def zero(self):
        return (Fraction(0),) * self.rank

    def reduce(self, v):
        return tuple(Fraction(x) for x in v)

    coerce = reduce

    def add(self, u, v):
        return tuple(a + b for a, b in zip(u, v))

    def sub(self, u, v):
        return tuple(a - b for a, b in zip(u, v))

    def neg(self, u):
        return tuple(-a for a in u)

    def scale(self, c, u):
        return tuple(c * a for a in u)

    def act(self, alpha, v):
        return tuple(_dot(row, v, 0) for row in self._sparse[alpha])

    def matrix(self, alpha):
        return self.action[alpha]


def rational_module(Q: FiniteGroup, mats) -> RationalModule:
    """Validate a rational representation of Q (homomorphism, invertible)."""
    if isinstance(mats, dict):
        mats = [mats[a] for a in range(Q.order)]
    mats = tuple(_fmat(M) for M in mats)
    k = len(mats[0])
    for a, M in enumerate(mats):
        if len(M) != k or any(len(r) != k for r in M):
            raise GroupError("matrix shape", (a,))
        if intmat.det(M) == 0:
            raise GroupError("non-invertible matrix", (a,))
    for a in Q:
        for b in Q:
            if mats[Q.mult[a][b]] != _mat_mul(mats[a], mats[b]):
                raise GroupError("action not a homomorphism", (a, b))
    return RationalModule(Q, k, mats)


def rationalize(A) -> RationalModule:
    """The free module ``Z^k`` read over ``Q`` with the same matrices."""
    if isinstance(A, RationalModule):
        return A
    if not A.is_free:
        raise CochainError("only free modules can be read rationally")
    return RationalModule(A.group, A.rank, tuple(_fmat(M) for M in A.action))


def matrix_group(gens, max_order=10000):
    """Close a list of invertible rational matrices into a finite group.

    Returns ``(Q, module)`` where element i of Q acts by ``module.action[i]``.
    """
    gens = [_fmat(g) for g in gens]
    k = len(gens[0])
    ident = _fmat([[int(i == j) for j in range(k)] for i in range(k)])
    count = [0]

    def op(a, b):
        count[0] += 1
        if count[0] > max_order ** 2:
            raise CochainError("matrix group appears infinite")
        return _mat_mul(a, b)

    Q, elts = group_from_elements([ident] + gens, op, name="matgrp")
    if Q.order > max_order:
        raise CochainError("matrix group too large")
    mats = tuple(elts[Q.labels[c]] for c in Q)
    return Q, RationalModule(Q, k, mats)


@dataclass(frozen=True, eq=False)
class FunctionModule:
    """``M(W, Q^k)``: vectors are flattened W-tables, index ``w*k + i``."""

    base: RationalModule
    rho: PermAction

    is_free = True
    is_finite = False

    def __post_init__(self):
        if self.rho.group != self.base.group:
            raise CochainError("phi and rho must be defined on the same group")
        object.__setattr__(self, "_inv", tuple(invert_perm(p) for p in self.rho.perm))

    @property
    def group(self):
        return self.base.group

    @property
    def k(self):
        return self.base.rank

    @property
    def npoints(self):
        return self.rho.npoints

    @property
    def rank(self):
        return self.npoints * self.k

    moduli = property(lambda self: (0,) * self.rank)
    zero = RationalModule.zero
    reduce = RationalModule.reduce
    coerce = RationalModule.reduce
    add = RationalModule.add
    sub = RationalModule.sub
    neg = RationalModule.neg
    scale = RationalModule.scale

    def act(self, alpha, v):
        k = self.k
        rows = self.base._sparse[alpha]
        hinv = self._inv[alpha]
        out = []
        for w in range(self.npoints):
            src = hinv[w] * k
            out.extend(_dot(row, v, src) for row in rows)
        return tuple(out)

    def matrix(self, alpha):
        n = self.rank
        cols = []
        for c in range(n):
            e = [Fraction(0)] * n
            e[c] = Fraction(1)
            cols.append(self.act(alpha, e))
        return tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))

    def table(self, v):
        """Reshape a flat vector into a tuple of k-vectors indexed by w."""
        k = self.k
        return tuple(tuple(v[w * k:(w + 1) * k]) for w in range(self.npoints))

    def flatten(self, table):
        return tuple(Fraction(x) for row in table for x in row)

    def constant(self, vec):
        return self.flatten([vec] * self.npoints)


def function_module(phi, rho: PermAction) -> FunctionModule:
    return FunctionModule(rationalize(phi), rho)


def _module_matrix(A, alpha):
    if isinstance(A, CoefModule):
        return A.action[alpha]
    return A.matrix(alpha)


# ---------------------------------------------------------------------------
# cochains

@dataclass(frozen=True, eq=False)
class Cochain1:
    module: object
    values: tuple

    def __post_init__(self):
        A = self.module
        vals = tuple(A.coerce(v) for v in self.values)
        if len(vals) != A.group.order:
            raise CochainError(f"1-cochain needs {A.group.order} values, got {len(vals)}")
        if vals[0] != A.zero:
            raise CochainError("1-cochain must vanish at the identity")
        object.__setattr__(self, "values", vals)

    @property
    def group(self):
        return self.module.group

    def __call__(self, a):
        return self.values[a]

    def __eq__(self, other):
        return isinstance(other, Cochain1) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __add__(self, other):
        A = self.module
        return Cochain1(A, tuple(A.add(u, v) for u, v in zip(self.values, other.values)))

    def __neg__(self):
        return Cochain1(self.module, tuple(self.module.neg(v) for v in self.values))

    def __sub__(self, other):
        return self + (-other)


@dataclass(frozen=True, eq=False)
class Cochain2:
    module: object
    values: tuple

    def __post_init__(self):
        A = self.module
        n = A.group.order
        if len(self.values) != n or any(len(r) != n for r in self.values):
            raise CochainError(f"2-cochain must be a total {n}x{n} table")
        object.__setattr__(self, "values", tuple(tuple(A.coerce(v) for v in r) for r in self.values))

    @property
    def group(self):
        return self.module.group

    def __call__(self, a, b):
        return self.values[a][b]

    def __eq__(self, other):
        return isinstance(other, Cochain2) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __add__(self, other):
        _same_base(self, other)
        A = self.module
        return Cochain2(A, tuple(tuple(A.add(u, v) for u, v in zip(r, s))
                                 for r, s in zip(self.values, other.values)))

    def __neg__(self):
        A = self.module
        return Cochain2(A, tuple(tuple(A.neg(v) for v in r) for r in self.values))

    def __sub__(self, other):
        return self + (-other)

    def is_normalized(self):
        z = self.module.zero
        n = self.group.order
        return all(self.values[0][b] == z for b in range(n)) and all(self.values[a][0] == z for a in range(n))

    def with_entry(self, a, b, v):
        rows = [list(r) for r in self.values]
        rows[a][b] = v
        return Cochain2(self.module, tuple(tuple(r) for r in rows))


def zero_cochain1(A):
    return Cochain1(A, (A.zero,) * A.group.order)


def zero_cochain2(A):
    n = A.group.order
    return Cochain2(A, ((A.zero,) * n,) * n)


def cochain2_from(A, entries):
    """2-cochain that is zero except on the given ``{(a, b): vector}`` entries."""
    n = A.group.order
    rows = [[A.zero] * n for _ in range(n)]
    for (a, b), v in entries.items():
        rows[a][b] = A.coerce(v)
    return Cochain2(A, tuple(tuple(r) for r in rows))


def cochain1_from(A, entries):
    vals = [A.zero] * A.group.order
    for a, v in entries.items():
        vals[a] = A.coerce(v)
    return Cochain1(A, tuple(vals))


def _same_base(x, y):
    if x.module.group != y.module.group or x.module.rank != y.module.rank:
        raise CochainError("cochains live over different groups or modules")
    if x.module.moduli != y.module.moduli:
        raise CochainError("cochains live over different modules")


@dataclass(frozen=True)
class Check:
    """Verdict of a law check; ``condition`` and ``witness`` describe a failure."""

    ok: bool
    condition: str = None
    witness: tuple = None

    def __bool__(self):
        return self.ok


PASS = Check(True)


def is_cocycle(f: Cochain2) -> Check:
    """Check normalization and the 2-cocycle identity on all triples."""
    A = f.module
    Q = A.group
    z = A.zero
    for b in Q:
        if f.values[0][b] != z:
            return Check(False, "normalization", (0, b))
    for a in Q:
        if f.values[a][0] != z:
            return Check(False, "normalization", (a, 0))
    if isinstance(A, CoefModule):
        w = kernels.cocycle_witness(Q.mult, A.action, f.values, A.moduli)
        return PASS if w is None else Check(False, "cocycle identity", tuple(w[:3]))
    for a in Q:
        for b in Q:
            ab = Q.mult[a][b]
            for c in Q:
                lhs = A.add(f.values[a][b], f.values[ab][c])
                rhs = A.add(A.act(a, f.values[b][c]), f.values[a][Q.mult[b][c]])
                if lhs != rhs:
                    return Check(False, "cocycle identity", (a, b, c))
    return PASS


def coboundary(lam: Cochain1) -> Cochain2:
    A = lam.module
    Q = A.group
    v = lam.values
    return Cochain2(A, tuple(tuple(A.sub(A.add(v[a], A.act(a, v[b])), v[Q.mult[a][b]]) for b in Q) for a in Q))


def central_twist(g: Cochain2, f: Cochain2) -> Cochain2:
    """Twist f by the cocycle g: the entrywise sum g + f."""
    _same_base(g, f)
    chk = is_cocycle(g)
    if not chk:
        raise CochainError(f"twisting cochain is not a cocycle: {chk.condition} at {chk.witness}")
    return g + f


def is_crossed_hom(eta: Cochain1) -> Check:
    """Check ``eta(ab) = eta(a) + a.eta(b)`` on all pairs."""
    A = eta.module
    Q = A.group
    for a in Q:
        for b in Q:
            if eta.values[Q.mult[a][b]] != A.add(eta.values[a], A.act(a, eta.values[b])):
                return Check(False, "crossed homomorphism", (a, b))
    return PASS


# ---------------------------------------------------------------------------
# linear systems for the normalized 1 -> 2 differential

def _d1_matrix(A):
    """Integer/rational matrix of d: C^1 -> C^2 on normalized cochains.

    Columns: (alpha, j) for alpha != 1; rows: (alpha, beta, i) for alpha, beta != 1.
    """
    Q = A.group
    k = A.rank
    nonid = list(Q.nonidentity())
    col = {a: (t * k) for t, a in enumerate(nonid)}
    rows = []
    for a in nonid:
        Ma = _module_matrix(A, a)
        for b in nonid:
            ab = Q.mult[a][b]
            for i in range(k):
                r = [0] * (k * len(nonid))
                r[col[a] + i] += 1
                for j in range(k):
                    r[col[b] + j] += Ma[i][j]
                if ab != 0:
                    r[col[ab] + i] -= 1
                rows.append(r)
    return rows, nonid


def cohomologous(f1: Cochain2, f2: Cochain2):
    """Return lam with ``d lam = f2 - f1``, or None if the classes differ.

    Integer modules are solved exactly over Z with congruence slack for
    finite moduli; rational modules over Q.
    """
    _same_base(f1, f2)
    for f in (f1, f2):
        if not f.is_normalized():
            raise CochainError("cohomologous expects normalized cochains")
    A = f1.module
    Q = A.group
    if Q.order == 1:
        return zero_cochain1(A)
    rows, nonid = _d1_matrix(A)
    k = A.rank
    diff = f2 - f1
    rhs = [x for a in nonid for b in nonid for x in diff.values[a][b]]
    nvar = k * len(nonid)
    if isinstance(A, CoefModule):
        slack = [(r, A.moduli[r % k]) for r in range(len(rows)) if A.moduli[r % k]]
        M = [row + [0] * len(slack) for row in rows]
        for s, (r, m) in enumerate(slack):
            M[r][nvar + s] = -m
        sol = intmat.solve_integer(M, rhs, nvar + len(slack))
    else:
        sol = intmat.solve_rational(rows, rhs, nvar)
    if sol is None:
        return None
    vals = [A.zero] + [A.reduce(sol[t * k:(t + 1) * k]) for t in range(len(nonid))]
    order = [0] + nonid
    lam = [None] * Q.order
    for a, v in zip(order, vals):
        lam[a] = v
    lam = Cochain1(A, tuple(lam))
    if coboundary(lam) != diff:
        raise AssertionError("internal: cohomologous witness fails verification")
    return lam


# ---------------------------------------------------------------------------
# averaging over finite groups

def averaging_cobound(f: Cochain2) -> Cochain1:
    """Solve ``d lam = f`` for a rational (or function-valued) cocycle f.

    ``lam(a) = (1/|Q|) sum_c f(a, c)``; the result is verified exactly.
    """
    A = f.module
    if isinstance(A, CoefModule):
        raise CochainError("averaging needs rational coefficients")
    chk = is_cocycle(f)
    if not chk:
        raise CochainError(f"not a cocycle: {chk.condition} at {chk.witness}")
    Q = A.group
    n = Fraction(1, Q.order)
    vals = []
    for a in Q:
        acc = A.zero
        for c in Q:
            acc = A.add(acc, f.values[a][c])
        vals.append(A.scale(n, acc))
    lam = Cochain1(A, tuple(vals))
    if coboundary(lam) != f:
        raise AssertionError("internal: averaged cochain does not cobound f")
    return lam


def principal_part(eta: Cochain1):
    """For a crossed homomorphism eta, return d with ``eta(a) = d - a.d``.

    ``d`` is the average of eta over the group; the identity is checked for
    every element and a failure raises :class:`CochainError`.
    """
    A = eta.module
    if isinstance(A, CoefModule):
        A = rationalize(A)
        eta = Cochain1(A, eta.values)
    Q = A.group
    acc = A.zero
    for a in Q:
        acc = A.add(acc, eta.values[a])
    d = A.scale(Fraction(1, Q.order), acc)
    for a in Q:
        if eta.values[a] != A.sub(d, A.act(a, d)):
            raise CochainError(f"eta is not principal at element {a}: not a crossed homomorphism")
    return d


# ---------------------------------------------------------------------------
# non-abelian coefficients: verification only

def is_crossed_hom_nonabelian(Q: FiniteGroup, eta, mul, act):
    """``eta(ab) == mul(eta(a), act(a, eta(b)))`` for all pairs; returns a Check."""
    for a in Q:
        for b in Q:
            if eta[Q.mult[a][b]] != mul(eta[a], act(a, eta[b])):
                return Check(False, "crossed homomorphism", (a, b))
    return PASS


def nonabelian_cohomologous(Q: FiniteGroup, eta1, eta2, mul, inv, act, candidates):
    """Search ``candidates`` for c with ``eta2(a) = c^-1 eta1(a) a(c)``."""
    for c in candidates:
        ci = inv(c)
        if all(eta2[a] == mul(mul(ci, eta1[a]), act(a, c)) for a in Q):
            return c
    return None

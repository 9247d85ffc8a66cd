"""Cohomology of a finite group with coefficients in a CoefModule.

Uses the normalized bar complex.  The module ``A = Z^k / diag(m)`` is
handled by lifting cochains to ``Z^{k N}`` and carrying the relation
lattice ``R`` along:

    Z^n = {x : d x in R^{n+1}},   B^n = d(C^{n-1}) + R^n,   H^n = Z^n / B^n,

with kernels, lattice bases and the final Smith form computed exactly.
"""

import itertools

from . import intmat
from .cochains import Cochain2, CochainError
from .groups import CoefModule


def _tuples(Q, n):
    return list(itertools.product(Q.nonidentity(), repeat=n))


def differential(A: CoefModule, n):
    """Integer matrix of ``d: C^n -> C^{n+1}`` on lifted normalized cochains.

    Rows index ``(t, i)`` for t in (Q-1)^{n+1}; columns ``(s, j)`` for s in
    (Q-1)^n, both flattened as ``index(t) * k + i``.
    """
    Q = A.group
    k = A.rank
    src = _tuples(Q, n)
    col = {s: i * k for i, s in enumerate(src)}
    rows = []
    for t in _tuples(Q, n + 1):
        M = A.action[t[0]]
        block = [[0] * (k * len(src)) for _ in range(k)]
        # a_1 . g(a_2 .. a_{n+1})
        c = col[t[1:]]
        for i in range(k):
            for j in range(k):
                block[i][c + j] += M[i][j]
        # sum (-1)^i g(.., a_i a_{i+1}, ..)
        for p in range(n):
            prod = Q.mult[t[p]][t[p + 1]]
            if prod == 0:
                continue
            s = t[:p] + (prod,) + t[p + 2:]
            sign = -1 if p % 2 == 0 else 1
            for i in range(k):
                block[i][col[s] + i] += sign
        # (-1)^{n+1} g(a_1 .. a_n)
        sign = -1 if n % 2 == 0 else 1
        c = col[t[:n]]
        for i in range(k):
            block[i][c + i] += sign
        rows.extend(block)
    return rows


def _relations(A, n):
    """Generators of the relation lattice R^n as vectors in Z^{k N_n}."""
    k = A.rank
    N = (A.group.order - 1) ** n
    out = []
    for t in range(N):
        for i, m in enumerate(A.moduli):
            if m:
                v = [0] * (k * N)
                v[t * k + i] = m
                out.append(v)
    return out


_LATTICES = {}


def cocycle_lattice(A: CoefModule, n=2):
    """Echelon Z-basis of lifted normalized n-cocycles (before reducing by R).

    Results are cached on the module's data, so repeated sampling is cheap.
    """
    key = (A.group.mult, A.rank, A.moduli, A.action, n)
    if key not in _LATTICES:
        _LATTICES[key] = tuple(tuple(v) for v in _cocycle_lattice(A, n))
    return [list(v) for v in _LATTICES[key]]


def _cocycle_lattice(A: CoefModule, n):
    k = A.rank
    dim = k * (A.group.order - 1) ** n
    D = differential(A, n)
    rel = _relations(A, n + 1)
    if rel:
        ncols = dim + len(rel)
        M = [row + [0] * len(rel) for row in D]
        for s, v in enumerate(rel):
            r = next(i for i, x in enumerate(v) if x)
            M[r][dim + s] = -v[r]
        gens = [vec[:dim] for vec in intmat.integer_kernel(M, ncols)]
    else:
        gens = intmat.integer_kernel(D, dim)
    return intmat.lattice_basis(gens, dim)


def invariant_factors(A: CoefModule, n):
    """Invariant factors of ``H^n(Q; A)`` for n >= 1; 0 marks a free summand."""
    if not isinstance(A, CoefModule):
        raise CochainError("cohomology is computed for integer CoefModules")
    if n < 1:
        raise ValueError("degree must be >= 1")
    Q = A.group
    k = A.rank
    if Q.order == 1 or k == 0:
        return []
    dim = k * (Q.order - 1) ** n
    Z = cocycle_lattice(A, n)
    if not Z:
        return []
    Dprev = differential(A, n - 1)
    prev_dim = k * (Q.order - 1) ** (n - 1)
    bgens = intmat.transpose(Dprev, prev_dim) + _relations(A, n)
    rel = []
    for b in bgens:
        if not any(b):
            continue
        c = intmat.lattice_coords(Z, b)
        if c is None:
            raise AssertionError("internal: coboundary outside cocycle lattice")
        rel.append(c)
    if dim == 0:
        return []
    return intmat.invariant_factors(rel, len(Z))


def h2_invariant_factors(A: CoefModule):
    return invariant_factors(A, 2)


def h1_invariant_factors(A: CoefModule):
    return invariant_factors(A, 1)


def h_order(factors):
    """Order of the group with these invariant factors (0 if infinite)."""
    n = 1
    for d in factors:
        if d == 0:
            return 0
        n *= d
    return n


def cocycle_from_lattice(A: CoefModule, vec):
    """Turn a lifted normalized 2-cocycle vector into a Cochain2 over A."""
    Q = A.group
    k = A.rank
    n = Q.order
    rows = [[A.zero] * n for _ in range(n)]
    for t, (a, b) in enumerate(_tuples(Q, 2)):
        rows[a][b] = A.reduce(vec[t * k:(t + 1) * k])
    return Cochain2(A, tuple(tuple(r) for r in rows))


def random_cocycle(A: CoefModule, rng, spread=3):
    """A random normalized 2-cocycle: an integer combination of a Z^2 basis."""
    Z = cocycle_lattice(A, 2)
    dim = A.rank * (A.group.order - 1) ** 2
    vec = [0] * dim
    for b in Z:
        c = rng.randint(-spread, spread)
        if c:
            vec = [x + c * y for x, y in zip(vec, b)]
    return cocycle_from_lattice(A, vec)

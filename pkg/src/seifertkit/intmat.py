"""Exact linear algebra over Z and Q on plain lists of Python ints / Fractions.

Matrices are lists of rows.  The integer routines are built on one
primitive, :func:`echelon_with_transform`, which row-reduces with
unimodular operations and records the transform.
"""

from fractions import Fraction


def _zero_rows(m, n):
    return [[0] * n for _ in range(m)]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def echelon_with_transform(A, ncols):
    """Row-reduce an integer matrix with unimodular row operations.

    Returns ``(E, U, pivots)`` with ``U A = E``, E in row echelon form
    (pivot entries positive, pivot columns strictly increasing) and
    ``pivots`` the list of ``(row, col)`` pairs.
    """
    m = len(A)
    rows = [list(A[i]) + [int(i == j) for j in range(m)] for i in range(m)]
    width = ncols + m
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if rows[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r], rows[p] = rows[p], rows[r]
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
            piv = rows[r]
            pv = piv[c]
            done = True
            for i in range(r + 1, m):
                x = rows[i][c]
                if x:
                    q = x // pv
                    if q:
                        rows[i] = [a - q * b for a, b in zip(rows[i], piv)]
                    if rows[i][c]:
                        done = False
            if done:
                pivots.append((r, c))
                r += 1
                break
    E = [row[:ncols] for row in rows]
    U = [row[ncols:width] for row in rows]
    return E, U, pivots


def integer_kernel(A, ncols):
    """A Z-basis of ``{x in Z^ncols : A x = 0}`` as a list of vectors."""
    At = transpose(A, ncols) if A else _zero_rows(ncols, 0)
    E, U, pivots = echelon_with_transform(At, len(A))
    rank = len(pivots)
    return [U[i] for i in range(rank, ncols)]


def column_echelon(A, ncols):
    """Return ``(H, U, pivots)`` with ``A U = H`` column echelon, U unimodular.

    ``pivots`` lists ``(row, col)`` of H with strictly increasing rows.
    """
    m = len(A)
    At = transpose(A, ncols) if m else _zero_rows(ncols, 0)
    Et, Ut, pv = echelon_with_transform(At, m)
    return transpose(Et, m) if ncols else [[] for _ in range(m)], transpose(Ut, ncols), [(c, r) for r, c in pv]


def solve_integer(A, b, ncols):
    """An integer solution of ``A x = b`` or None if none exists."""
    m = len(A)
    H, U, pivots = column_echelon(A, ncols)
    res = list(b)
    y = [0] * ncols
    prev = -1
    for row, col in pivots:
        if any(res[i] for i in range(prev + 1, row)):
            return None
        h = H[row][col]
        if res[row] % h:
            return None
        q = res[row] // h
        y[col] = q
        if q:
            for i in range(row, m):
                res[i] -= q * H[i][col]
        prev = row
    if any(res):
        return None
    return matvec(U, y)


def lattice_basis(vectors, n):
    """Echelon Z-basis of the lattice spanned by ``vectors`` in Z^n."""
    if not vectors:
        return []
    E, _, pivots = echelon_with_transform([list(v) for v in vectors], n)
    return [E[r] for r, _ in pivots]


def lattice_coords(basis, v):
    """Coordinates of v in an echelon lattice basis (None if v is not in it)."""
    res = list(v)
    coords = []
    for row in basis:
        c = next(j for j, x in enumerate(row) if x)
        if res[c] % row[c]:
            return None
        q = res[c] // row[c]
        coords.append(q)
        if q:
            res = [a - q * b for a, b in zip(res, row)]
    if any(res):
        return None
    return coords


def smith_diagonal(A, ncols):
    """Nonzero diagonal entries of the Smith normal form, with d_i | d_{i+1}."""
    D = [list(r) for r in A if any(r)]
    n = ncols
    diag = []
    while D:
        m = len(D)
        i, j = min(((i, j) for i in range(m) for j in range(n) if D[i][j]),
                   key=lambda ij: abs(D[ij[0]][ij[1]]))
        while True:
            D[0], D[i] = D[i], D[0]
            for row in D:
                row[0], row[j] = row[j], row[0]
            pv = D[0][0]
            for r in range(1, m):
                if D[r][0]:
                    t = D[r][0] // pv
                    D[r] = [a - t * b for a, b in zip(D[r], D[0])]
            for c in range(1, n):
                if D[0][c]:
                    t = D[0][c] // pv
                    for row in D:
                        row[c] -= t * row[0]
            rest = [(r, 0) for r in range(1, m) if D[r][0]] + [(0, c) for c in range(1, n) if D[0][c]]
            if rest:
                i, j = min(rest, key=lambda ij: abs(D[ij[0]][ij[1]]))
                continue
            bad = next((r for r in range(1, m) if any(x % pv for x in D[r][1:])), None)
            if bad is None:
                break
            D[0] = [a + b for a, b in zip(D[0], D[bad])]
            i, j = 0, 0
        diag.append(abs(D[0][0]))
        D = [row[1:] for row in D[1:] if any(row[1:])]
        n -= 1
    return diag


def invariant_factors(relations, ngens):
    """Invariant factors of ``Z^ngens / rowspan(relations)``.

    Units are dropped; free summands are reported as 0 at the end.
    """
    diag = smith_diagonal(relations, ngens) if relations else []
    return [d for d in diag if d != 1] + [0] * (ngens - len(diag))


# ---------------------------------------------------------------------------
# rational

def rref(A, ncols):
    """Reduced row echelon form over Q; returns ``(R, pivot_cols)``."""
    R = [[Fraction(x) for x in row] for row in A]
    m = len(R)
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, m) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        pv = R[r][c]
        R[r] = [x / pv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                t = R[i][c]
                R[i] = [a - t * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(A, ncols):
    return len(rref(A, ncols)[1])


def solve_rational(A, b, ncols):
    """A solution of ``A x = b`` over Q with all free coordinates zero, or None."""
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = R[i][ncols]
    return x


def inverse(M):
    """Inverse of a square rational matrix; raises ValueError if singular."""
    n = len(M)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug, n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def det(M):
    n = len(M)
    R = [[Fraction(x) for x in row] for row in M]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if R[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            R[c], R[p] = R[p], R[c]
            d = -d
        d *= R[c][c]
        for i in range(c + 1, n):
            if R[i][c]:
                t = R[i][c] / R[c][c]
                R[i] = [a - t * b for a, b in zip(R[i], R[c])]
    return d


def matmul(A, B):
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]

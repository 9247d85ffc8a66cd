# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exhaustive checkers over int64 tables.

Every function mirrors the pure-Python version in ``_pykernels`` and
returns ``None`` when the law holds, otherwise the first witness tuple in
lexicographic order.
"""

import numpy as np

ctypedef long long i64


cdef inline i64 _red(i64 x, i64 m) nogil:
    cdef i64 r
    if m == 0:
        return x
    r = x % m
    if r < 0:
        r += m
    return r


def assoc_witness(const i64[:, ::1] mult):
    cdef Py_ssize_t n = mult.shape[0]
    cdef Py_ssize_t a, b, c
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mult[mult[a, b], c] != mult[a, mult[b, c]]:
                    return (a, b, c)
    return None


def cocycle_witness(const i64[:, ::1] mult, const i64[:, :, ::1] act,
                    const i64[:, :, ::1] f, const i64[::1] moduli):
    """First (a, b, c, coord) where f(a,b)+f(ab,c) != a.f(b,c)+f(a,bc)."""
    cdef Py_ssize_t n = mult.shape[0]
    cdef Py_ssize_t k = moduli.shape[0]
    cdef Py_ssize_t a, b, c, i, j
    cdef i64 lhs, rhs
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for i in range(k):
                    lhs = f[a, b, i] + f[mult[a, b], c, i]
                    rhs = f[a, mult[b, c], i]
                    for j in range(k):
                        rhs += act[a, i, j] * f[b, c, j]
                    if _red(lhs - rhs, moduli[i]) != 0:
                        return (a, b, c, i)
    return None


def ext_assoc_witness(const i64[:, ::1] mult, const i64[:, :, ::1] act,
                      const i64[:, :, ::1] f, const i64[::1] moduli,
                      const i64[:, ::1] box):
    """Exhaustive associativity of (a,x)(b,y) = (a + x.b + f(x,y), xy).

    Group parts range over all of Q, module parts over the rows of ``box``.
    Returns (x, y, z, ia, ib, ic) for the first non-associative triple.
    """
    cdef Py_ssize_t n = mult.shape[0]
    cdef Py_ssize_t k = moduli.shape[0]
    cdef Py_ssize_t m = box.shape[0]
    cdef Py_ssize_t x, y, z, ia, ib, ic, i, j
    cdef i64 s
    cdef i64[::1] ab = np.zeros(k, dtype=np.int64)
    cdef i64[::1] left = np.zeros(k, dtype=np.int64)
    cdef i64[::1] bc = np.zeros(k, dtype=np.int64)
    cdef i64[::1] right = np.zeros(k, dtype=np.int64)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                for ia in range(m):
                    for ib in range(m):
                        # (a,x)(b,y)
                        for i in range(k):
                            s = box[ia, i] + f[x, y, i]
                            for j in range(k):
                                s += act[x, i, j] * box[ib, j]
                            ab[i] = _red(s, moduli[i])
                        for ic in range(m):
                            # ((a,x)(b,y))(c,z)
                            for i in range(k):
                                s = ab[i] + f[mult[x, y], z, i]
                                for j in range(k):
                                    s += act[mult[x, y], i, j] * box[ic, j]
                                left[i] = _red(s, moduli[i])
                            # (b,y)(c,z)
                            for i in range(k):
                                s = box[ib, i] + f[y, z, i]
                                for j in range(k):
                                    s += act[y, i, j] * box[ic, j]
                                bc[i] = _red(s, moduli[i])
                            # (a,x)((b,y)(c,z))
                            for i in range(k):
                                s = box[ia, i] + f[x, mult[y, z], i]
                                for j in range(k):
                                    s += act[x, i, j] * bc[j]
                                right[i] = _red(s, moduli[i])
                            for i in range(k):
                                if left[i] != right[i]:
                                    return (x, y, z, ia, ib, ic)
    return None


def theta_hom_witness(const i64[:, ::1] mult, const i64[:, :, ::1] act,
                      const i64[:, :, ::1] f, const i64[:, :, ::1] lam,
                      i64 denom, const i64[:, ::1] perm_inv,
                      const i64[:, ::1] box):
    """Check theta(a,x) theta(b,y) == theta((a,x)(b,y)) on W-tables.

    theta(a,x) has universal fibre part w -> -a - lam[x][w] (scaled by
    ``denom``); composition of fibre parts is L1(w) + A1 L2(h1^-1 w).
    Returns (x, y, ia, ib) for the first failing pair.
    """
    cdef Py_ssize_t n = mult.shape[0]
    cdef Py_ssize_t npts = lam.shape[1]
    cdef Py_ssize_t k = lam.shape[2]
    cdef Py_ssize_t m = box.shape[0]
    cdef Py_ssize_t x, y, ia, ib, w, i, j, hw, xy
    cdef i64 lhs, rhs, c
    for x in range(n):
        for y in range(n):
            xy = mult[x, y]
            for ia in range(m):
                for ib in range(m):
                    for w in range(npts):
                        hw = perm_inv[x, w]
                        for i in range(k):
                            lhs = -denom * box[ia, i] - lam[x, w, i]
                            for j in range(k):
                                lhs += act[x, i, j] * (-denom * box[ib, j] - lam[y, hw, j])
                            c = box[ia, i] + f[x, y, i]
                            for j in range(k):
                                c += act[x, i, j] * box[ib, j]
                            rhs = -denom * c - lam[xy, w, i]
                            if lhs != rhs:
                                return (x, y, ia, ib)
    return None

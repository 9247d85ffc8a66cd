"""Pure-Python twins of the compiled checkers in ``_ckernels.pyx``.

Inputs are nested lists (``ndarray.tolist()`` output); semantics and
witness order match the compiled versions exactly.
"""


def _red(x, m):
    return x % m if m else x


def assoc_witness(mult):
    n = len(mult)
    for a in range(n):
        row_a = mult[a]
        for b in range(n):
            ab = row_a[b]
            row_b = mult[b]
            for c in range(n):
                if mult[ab][c] != row_a[row_b[c]]:
                    return (a, b, c)
    return None


def cocycle_witness(mult, act, f, moduli):
    n = len(mult)
    k = len(moduli)
    for a in range(n):
        for b in range(n):
            ab = mult[a][b]
            for c in range(n):
                bc = mult[b][c]
                fbc = f[b][c]
                for i in range(k):
                    lhs = f[a][b][i] + f[ab][c][i]
                    rhs = f[a][bc][i] + sum(act[a][i][j] * fbc[j] for j in range(k))
                    if _red(lhs - rhs, moduli[i]) != 0:
                        return (a, b, c, i)
    return None


def _mul(act, f, moduli, k, a, x, b, y):
    fx = f[x][y]
    ax = act[x]
    return [_red(a[i] + fx[i] + sum(ax[i][j] * b[j] for j in range(k)), moduli[i])
            for i in range(k)]


def ext_assoc_witness(mult, act, f, moduli, box):
    n = len(mult)
    k = len(moduli)
    m = len(box)
    for x in range(n):
        for y in range(n):
            xy = mult[x][y]
            for z in range(n):
                yz = mult[y][z]
                for ia in range(m):
                    for ib in range(m):
                        ab = _mul(act, f, moduli, k, box[ia], x, box[ib], y)
                        for ic in range(m):
                            left = _mul(act, f, moduli, k, ab, xy, box[ic], z)
                            bc = _mul(act, f, moduli, k, box[ib], y, box[ic], z)
                            right = _mul(act, f, moduli, k, box[ia], x, bc, yz)
                            if left != right:
                                return (x, y, z, ia, ib, ic)
    return None


def theta_hom_witness(mult, act, f, lam, denom, perm_inv, box):
    n = len(mult)
    npts = len(lam[0])
    k = len(lam[0][0])
    m = len(box)
    for x in range(n):
        ax = act[x]
        for y in range(n):
            xy = mult[x][y]
            for ia in range(m):
                a = box[ia]
                for ib in range(m):
                    b = box[ib]
                    for w in range(npts):
                        hw = perm_inv[x][w]
                        for i in range(k):
                            lhs = -denom * a[i] - lam[x][w][i]
                            lhs += sum(ax[i][j] * (-denom * b[j] - lam[y][hw][j])
                                       for j in range(k))
                            c = a[i] + f[x][y][i] + sum(ax[i][j] * b[j] for j in range(k))
                            rhs = -denom * c - lam[xy][w][i]
                            if lhs != rhs:
                                return (x, y, ia, ib)
    return None

"""Extensions ``E = A x_(f, phi) Q`` of a finite group by an abelian module.

Elements are pairs ``(a, alpha)`` with product

    (a, alpha)(b, beta) = (a + phi(alpha) b + f(alpha, beta), alpha beta).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from . import intmat, kernels
from .cochains import (
    Check, Cochain1, Cochain2, PASS, RationalModule, cohomologous, is_cocycle, rationalize,
)
from .groups import CoefModule, FiniteGroup, is_homomorphism, validate_module

DEFAULT_BOX = 3


class ExtensionError(ValueError):
    pass


class ExtElement(NamedTuple):
    a: tuple
    alpha: int


@dataclass(frozen=True, eq=False)
class ExtensionData:
    module: object
    f: Cochain2

    def __post_init__(self):
        if self.f.module is not self.module and (self.f.module.group != self.module.group
                                                 or self.f.module.moduli != self.module.moduli):
            raise ExtensionError("cocycle and module disagree")
        chk = is_cocycle(self.f)
        if not chk:
            raise ExtensionError(f"invalid cocycle: {chk.condition} at {chk.witness}")

    @property
    def Q(self) -> FiniteGroup:
        return self.module.group

    @property
    def identity(self):
        return ExtElement(self.module.zero, 0)

    def element(self, a, alpha):
        return ExtElement(self.module.coerce(a), alpha)

    def to_json(self):
        from .serialize import extension_to_json
        return extension_to_json(self)


def make_extension(module, f=None) -> ExtensionData:
    """Extension with cocycle f (zero cochain, i.e. split, when omitted)."""
    from .cochains import zero_cochain2
    return ExtensionData(module, f if f is not None else zero_cochain2(module))


def ext_mul(E: ExtensionData, x, y) -> ExtElement:
    A = E.module
    a, alpha = x
    b, beta = y
    return ExtElement(A.add(A.add(a, A.act(alpha, b)), E.f.values[alpha][beta]), E.Q.mult[alpha][beta])


def ext_inv(E: ExtensionData, x) -> ExtElement:
    """The unique ``(b, alpha^-1)`` with ``x y = y x = 1``; checked both ways."""
    A = E.module
    a, alpha = x
    ai = E.Q.inv[alpha]
    b = A.act(ai, A.neg(A.add(a, E.f.values[alpha][ai])))
    y = ExtElement(b, ai)
    if ext_mul(E, x, y) != E.identity or ext_mul(E, y, x) != E.identity:
        raise AssertionError("internal: extension inverse check failed")
    return y


def ext_pow(E, x, n):
    if n < 0:
        x, n = ext_inv(E, x), -n
    r = E.identity
    for _ in range(n):
        r = ext_mul(E, r, x)
    return r


def torsion_order(E: ExtensionData, x, bound=64):
    """Least n <= bound with x^n = 1, or None when the order exceeds ``bound``."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    x = ExtElement(*x)
    r = x
    for n in range(1, bound + 1):
        if r == E.identity:
            return n
        r = ext_mul(E, r, x)
    return None


def box_vectors(module, radius=DEFAULT_BOX):
    """Module vectors with coordinates in [-radius, radius], reduced and deduplicated."""
    seen = dict.fromkeys(module.reduce(v) for v in itertools.product(range(-radius, radius + 1), repeat=module.rank))
    return list(seen)


def elements(E: ExtensionData, radius=DEFAULT_BOX):
    """All of E when A is finite; otherwise module parts from the test box."""
    vecs = E.module.elements() if getattr(E.module, "is_finite", False) else box_vectors(E.module, radius)
    return [ExtElement(tuple(v), alpha) for alpha in E.Q for v in vecs]


def torsion_profile(E: ExtensionData, radius=DEFAULT_BOX, bound=64):
    """Sorted multiset of element orders over :func:`elements` (None = exceeds bound)."""
    orders = [torsion_order(E, x, bound) for x in elements(E, radius)]
    return sorted(orders, key=lambda o: (o is None, o or 0))


def raw_product(module, f: Cochain2):
    """The product built from any 2-cochain f, without checking that f is a cocycle."""
    A, Q = module, module.group

    def mul(p, q):
        return ExtElement(A.add(A.add(p[0], A.act(p[1], q[0])), f.values[p[1]][q[1]]), Q.mult[p[1]][q[1]])
    return mul


def associativity_witness(module, f: Cochain2, radius=DEFAULT_BOX):
    """Search ``Q^3 x box^3`` for a non-associative triple of the product built from f.

    Works for any 2-cochain (not only cocycles); returns
    ``((a, x), (b, y), (c, z))`` or None.
    """
    Q = module.group
    box = box_vectors(module, radius)
    if isinstance(module, CoefModule):
        w = kernels.ext_assoc_witness(Q.mult, module.action, f.values, module.moduli, box)
        if w is None:
            return None
        x, y, z, ia, ib, ic = w
        return (ExtElement(box[ia], x), ExtElement(box[ib], y), ExtElement(box[ic], z))
    mul = raw_product(module, f)
    for x, y, z in itertools.product(Q, repeat=3):
        for a, b, c in itertools.product(box, repeat=3):
            p, q, r = ExtElement(a, x), ExtElement(b, y), ExtElement(c, z)
            if mul(mul(p, q), r) != mul(p, mul(q, r)):
                return (p, q, r)
    return None


# ---------------------------------------------------------------------------
# change of kernel / quotient

def _apply_mat(M, v):
    return tuple(sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M)))


def _injective(eps, A, B):
    """Is the map Z^k/A -> Z^k'/B induced by eps injective?"""
    k, kk = A.rank, B.rank
    rel = [(i, m) for i, m in enumerate(B.moduli) if m]
    M = [list(eps[i]) + [0] * len(rel) for i in range(kk)]
    for s, (i, m) in enumerate(rel):
        M[i][k + s] = -m
    for v in intmat.integer_kernel(M, k + len(rel)):
        if A.reduce(v[:k]) != A.zero:
            return False
    return True


def pushout(E: ExtensionData, eps, target=None) -> ExtensionData:
    """Push E along an injective equivariant ``eps: A -> A'``.

    ``target`` is the module A' (carrying the extended action); when it is
    omitted, A must be free and A' is A read over the rationals with the
    same matrices and eps the identity.
    """
    A = E.module
    if target is None:
        target = rationalize(A)
        if eps is None:
            eps = [[int(i == j) for j in range(A.rank)] for i in range(A.rank)]
    if target.group != A.group:
        raise ExtensionError("target module lives over a different group")
    eps = tuple(tuple(row) for row in eps)
    if len(eps) != target.rank or any(len(r) != A.rank for r in eps):
        raise ExtensionError(f"eps must be a {target.rank}x{A.rank} matrix")
    # well-defined on A
    for j, m in enumerate(A.moduli):
        if m and target.reduce(tuple(m * eps[i][j] for i in range(target.rank))) != target.zero:
            raise ExtensionError(f"eps does not respect the modulus of coordinate {j}")
    basis = [tuple(int(i == j) for i in range(A.rank)) for j in range(A.rank)]
    for alpha in A.group:
        for e in basis:
            if target.reduce(_apply_mat(eps, A.act(alpha, e))) != target.act(alpha, target.reduce(_apply_mat(eps, e))):
                raise ExtensionError(f"eps is not equivariant at element {alpha}")
    if isinstance(target, CoefModule):
        if not _injective(eps, A, target):
            raise ExtensionError("eps is not injective")
    elif not A.is_free or intmat.rank(eps, A.rank) < A.rank:
        raise ExtensionError("eps is not injective")
    vals = tuple(tuple(target.reduce(_apply_mat(eps, v)) for v in row) for row in E.f.values)
    return ExtensionData(target, Cochain2(target, vals))


def pullback_module(A, Qnew: FiniteGroup, rho):
    if isinstance(A, CoefModule):
        return validate_module(Qnew, A.rank, A.moduli, [A.action[rho[q]] for q in Qnew])
    return RationalModule(Qnew, A.rank, tuple(A.matrix(rho[q]) for q in Qnew))


def pullback(E: ExtensionData, Qnew: FiniteGroup, rho) -> ExtensionData:
    """Pull E back along a homomorphism ``rho: Qnew -> E.Q`` (a table)."""
    rho = tuple(rho)
    bad = is_homomorphism(Qnew, E.Q, rho)
    if bad is not None:
        raise ExtensionError(f"rho is not a homomorphism (witness {bad})")
    A2 = pullback_module(E.module, Qnew, rho)
    vals = tuple(tuple(E.f.values[rho[p]][rho[q]] for q in Qnew) for p in Qnew)
    return ExtensionData(A2, Cochain2(A2, vals))


# ---------------------------------------------------------------------------
# congruence and maps between extensions

def _check_same(E1, E2):
    if E1.Q != E2.Q or E1.module.moduli != E2.module.moduli or E1.module.rank != E2.module.rank:
        raise ExtensionError("extensions have different quotient or kernel")
    if any(E1.module.act(a, v) != E2.module.act(a, v) for a in E1.Q for v in _basis(E1.module)):
        raise ExtensionError("extensions have different actions")


def _basis(A):
    return [A.reduce(tuple(int(i == j) for i in range(A.rank))) for j in range(A.rank)]


def congruent(E1: ExtensionData, E2: ExtensionData):
    """Witness lam with ``d lam = f2 - f1`` or None.

    The witness gives the congruence ``E2 -> E1, (a, alpha) -> (a + lam(alpha), alpha)``.
    """
    _check_same(E1, E2)
    return cohomologous(E1.f, E2.f)


def congruence_map(lam: Cochain1):
    A = lam.module
    return lambda x: ExtElement(A.add(x[0], lam.values[x[1]]), x[1])


def is_homomorphism_on(E1, E2, theta, xs) -> Check:
    """Check ``theta(xy) == theta(x) theta(y)`` for all pairs from ``xs``."""
    for x in xs:
        for y in xs:
            if theta(ext_mul(E1, x, y)) != ext_mul(E2, theta(x), theta(y)):
                return Check(False, "homomorphism", (x, y))
    return PASS


@dataclass(frozen=True)
class ExtensionMap:
    """``theta(a, alpha) = (iota(a) + lam(alpha), theta_bar(alpha))``."""

    source: ExtensionData
    target: ExtensionData
    iota: tuple
    theta_bar: tuple
    lam: Cochain1

    def __call__(self, x):
        a, alpha = x
        T = self.target.module
        return ExtElement(T.add(T.reduce(_apply_mat(self.iota, a)), self.lam.values[alpha]), self.theta_bar[alpha])


def _transport(E, E2, iota, theta_bar):
    """iota o f and theta_bar^* f' as cochains over the pulled-back target module."""
    T = pullback_module(E2.module, E.Q, theta_bar)
    i_f = Cochain2(T, tuple(tuple(T.reduce(_apply_mat(iota, v)) for v in row) for row in E.f.values))
    pulled = Cochain2(T, tuple(tuple(E2.f.values[theta_bar[a]][theta_bar[b]] for b in E.Q) for a in E.Q))
    return T, i_f, pulled


def map_extension(E: ExtensionData, E2: ExtensionData, iota, theta_bar, radius=1):
    """Find ``theta: E -> E2`` over ``iota: A -> A'`` and ``theta_bar: Q -> Q'``.

    Solves ``iota o f - theta_bar^* f' = d lam`` over A' with the action
    pulled back along theta_bar; returns an :class:`ExtensionMap` verified
    exhaustively on Q-parts and module parts in the box, or None.
    """
    theta_bar = tuple(theta_bar)
    iota = tuple(tuple(r) for r in iota)
    bad = is_homomorphism(E.Q, E2.Q, theta_bar)
    if bad is not None:
        raise ExtensionError(f"theta_bar is not a homomorphism (witness {bad})")
    A, B = E.module, E2.module
    for alpha in E.Q:
        for e in _basis(A):
            if B.reduce(_apply_mat(iota, A.act(alpha, e))) != B.act(theta_bar[alpha], B.reduce(_apply_mat(iota, e))):
                raise ExtensionError(f"iota is not equivariant at element {alpha}")
    T, i_f, pulled = _transport(E, E2, iota, theta_bar)
    # d lam = i_f - pulled, i.e. cohomologous(pulled, i_f)
    lam = cohomologous(pulled, i_f)
    if lam is None:
        return None
    lam = Cochain1(B, lam.values)
    theta = ExtensionMap(E, E2, iota, theta_bar, lam)
    chk = is_homomorphism_on(E, E2, theta, elements(E, radius))
    if not chk:
        raise AssertionError(f"internal: solved map is not a homomorphism at {chk.witness}")
    return theta


def difference_in_kernel(E: ExtensionData, E_other: ExtensionData, iota, target_module):
    """Do ``E`` and ``E_other`` become cohomologous after pushing along iota?

    With E already mapping into the target, this decides whether E_other
    maps into it too: ``[E_other] - [E]`` must die under ``iota_*``.
    Returns the witness lam or None.
    """
    _check_same(E, E_other)
    iota = tuple(tuple(r) for r in iota)
    T = target_module
    f1 = Cochain2(T, tuple(tuple(T.reduce(_apply_mat(iota, v)) for v in r) for r in E.f.values))
    f2 = Cochain2(T, tuple(tuple(T.reduce(_apply_mat(iota, v)) for v in r) for r in E_other.f.values))
    return cohomologous(f1, f2)

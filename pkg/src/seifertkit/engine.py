"""Weakly equivariant actions of extensions on ``Q^k x W``.

A universal element ``(lam, A, h)`` acts by

    (x, w) -> (A x - lam(h w), h w)

and these compose as ``(lam1 + A1 lam2 h1^-1, A1 A2, h1 h2)``.  Given an
extension ``E = Z^k x_(f, phi) Q`` and a Q-set W, :func:`construct_theta`
averages f into ``lam: Q -> M(W, Q^k)`` with ``d lam = f`` and realizes E by

    theta(a, alpha) = (-a - lam(alpha), phi(alpha), rho(alpha)),

so ``theta(a, 1)`` is translation by a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import intmat, kernels
from .cochains import (
    Check, Cochain1, Cochain2, CochainError, PASS, averaging_cobound, coboundary, function_module,
    rationalize,
)
from .extensions import ExtensionData, ExtElement, box_vectors, elements, ext_mul, pullback
from .groups import CoefModule, PermAction, compose_perm, invert_perm, orbits_and_stabilizers


class EngineError(ValueError):
    pass


class RigidityRegimeError(EngineError):
    """Raised when two actions use different W-actions: uniqueness does not apply."""


# ---------------------------------------------------------------------------
# the universal group

def _frac_vec(v):
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class UniversalElement:
    lam: tuple
    mat: tuple
    perm: tuple

    def __post_init__(self):
        lam = tuple(_frac_vec(v) for v in self.lam)
        mat = tuple(_frac_vec(r) for r in self.mat)
        perm = tuple(int(p) for p in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise EngineError("perm is not a bijection")
        if len(lam) != len(perm):
            raise EngineError("lam must have one vector per point of W")
        if any(len(r) != len(mat) for r in mat) or any(len(v) != len(mat) for v in lam):
            raise EngineError("dimension mismatch between lam and mat")
        if intmat.det(mat) == 0:
            raise EngineError("mat is not invertible")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "perm", perm)

    @property
    def k(self):
        return len(self.mat)

    @property
    def npoints(self):
        return len(self.perm)

    def __call__(self, point):
        return u_apply(self, point)


def u_identity(k, npoints):
    return UniversalElement(((0,) * k,) * npoints, intmat.identity(k), range(npoints))


def translation(a, npoints):
    """Left translation by a: ``(x, w) -> (x + a, w)``."""
    k = len(a)
    return UniversalElement((tuple(-Fraction(x) for x in a),) * npoints, intmat.identity(k), range(npoints))


def pure_lam(table):
    """``(lam, I, id)``, the element acting by ``(x, w) -> (x - lam(w), w)``."""
    k = len(table[0])
    return UniversalElement(table, intmat.identity(k), range(len(table)))


def _mv(M, v):
    return tuple(sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M)))


def u_apply(e: UniversalElement, point):
    x, w = point
    if len(x) != e.k:
        raise EngineError(f"point has dimension {len(x)}, expected {e.k}")
    hw = e.perm[w]
    y = _mv(e.mat, _frac_vec(x))
    return tuple(a - b for a, b in zip(y, e.lam[hw])), hw


def u_compose(e1: UniversalElement, e2: UniversalElement) -> UniversalElement:
    """The element acting as ``e1`` after ``e2``."""
    if e1.k != e2.k or e1.npoints != e2.npoints:
        raise EngineError("dimension mismatch")
    hinv = invert_perm(e1.perm)
    lam = tuple(tuple(a + b for a, b in zip(e1.lam[w], _mv(e1.mat, e2.lam[hinv[w]])))
                for w in range(e1.npoints))
    mat = intmat.matmul(e1.mat, e2.mat)
    return UniversalElement(lam, mat, compose_perm(e1.perm, e2.perm))


def u_inverse(e: UniversalElement) -> UniversalElement:
    Ai = intmat.inverse(e.mat)
    lam = tuple(tuple(-c for c in _mv(Ai, e.lam[e.perm[w]])) for w in range(e.npoints))
    return UniversalElement(lam, Ai, invert_perm(e.perm))


# ---------------------------------------------------------------------------
# construction

@dataclass(frozen=True)
class ConstructedAction:
    source: ExtensionData
    rho: PermAction
    lam: Cochain1
    report: dict

    @property
    def fmodule(self):
        return self.lam.module

    def lam_table(self, alpha):
        return self.fmodule.table(self.lam.values[alpha])

    def theta(self, x) -> UniversalElement:
        a, alpha = x
        A = self.source.module
        lam = self.lam_table(alpha)
        table = tuple(tuple(-Fraction(ai) - li for ai, li in zip(a, row)) for row in lam)
        return UniversalElement(table, A.action[alpha] if isinstance(A, CoefModule) else A.matrix(alpha),
                                self.rho.perm[alpha])

    def apply(self, x, point):
        return u_apply(self.theta(x), point)


def _phi_module(E: ExtensionData):
    A = E.module
    if getattr(A, "moduli", None) and any(A.moduli):
        raise EngineError("the fiber module must be free (all moduli 0)")
    return rationalize(A)


def lift_cocycle(E: ExtensionData, rho: PermAction) -> Cochain2:
    """f read as a cocycle with values in constant functions ``W -> Q^k``."""
    FM = function_module(_phi_module(E), rho)
    return Cochain2(FM, tuple(tuple(FM.constant(v) for v in row) for row in E.f.values))


def cond1_check(F: Cochain2, lam: Cochain1) -> Check:
    """``d lam = F`` compared as W-tables; the witness is ``(alpha, beta, w)``."""
    FM = F.module
    d = coboundary(lam)
    Q = FM.group
    for a in Q:
        for b in Q:
            got, want = FM.table(d.values[a][b]), FM.table(F.values[a][b])
            for w in range(FM.npoints):
                if got[w] != want[w]:
                    return Check(False, "cond-1", (a, b, w))
    return PASS


def _common_denominator(vals):
    return math.lcm(1, *(Fraction(x).denominator for v in vals for x in v))


def theta_hom_check(act: ConstructedAction, radius=2) -> Check:
    """``theta(x) theta(y) == theta(xy)`` for all Q-parts and module parts in the box."""
    E = act.source
    A = E.module
    Q = E.Q
    FM = act.fmodule
    if isinstance(A, CoefModule):
        D = _common_denominator(act.lam.values)
        lam = [[[int(c * D) for c in row] for row in FM.table(act.lam.values[a])] for a in Q]
        perm_inv = [list(invert_perm(act.rho.perm[a])) for a in Q]
        box = box_vectors(A, radius)
        w = kernels.theta_hom_witness(Q.mult, A.action, E.f.values, lam, D, perm_inv, box)
        if w is None:
            return PASS
        x, y, ia, ib = w
        return Check(False, "homomorphism", (ExtElement(box[ia], x), ExtElement(box[ib], y)))
    return theta_hom_check_generic(act, radius)


def theta_hom_check_generic(act: ConstructedAction, radius=2) -> Check:
    """Same law as :func:`theta_hom_check`, by composing universal elements."""
    E = act.source
    xs = elements(E, radius)
    images = {x: act.theta(x) for x in xs}
    for x in xs:
        for y in xs:
            if u_compose(images[x], images[y]) != act.theta(ext_mul(E, x, y)):
                return Check(False, "homomorphism", (x, y))
    return PASS


def translation_check(act: ConstructedAction, radius=2) -> Check:
    """theta restricted to the kernel is translation, acting trivially on W."""
    E = act.source
    n = act.rho.npoints
    for a in box_vectors(E.module, radius):
        if act.theta(ExtElement(a, 0)) != translation(a, n):
            return Check(False, "translation", (a,))
    return PASS


def construct_theta(E: ExtensionData, rho: PermAction, radius=2) -> ConstructedAction:
    """Realize E on ``Q^k x W`` and verify the construction.

    Raises :class:`EngineError` when the module is not free or the
    W-action lives on another group, and ``AssertionError`` if a
    verification ever fails (which would be a bug).
    """
    if rho.group != E.Q:
        raise EngineError("rho must be an action of the extension's quotient group")
    F = lift_cocycle(E, rho)
    try:
        lam = averaging_cobound(F)
    except CochainError as exc:
        raise EngineError(f"cocycle invalid: {exc}") from None
    act = ConstructedAction(E, rho, lam, {})
    report = {}
    for name, chk in (("cond1", cond1_check(F, lam)),
                      ("homomorphism", theta_hom_check(act, radius)),
                      ("translations", translation_check(act, radius))):
        if not chk:
            raise AssertionError(f"internal: {name} fails at {chk.witness}")
        report[name] = "pass"
    report["box_radius"] = radius
    report["pairs_checked"] = E.Q.order ** 2
    return ConstructedAction(E, rho, lam, report)


# ---------------------------------------------------------------------------
# fibers and injectivity

@dataclass(frozen=True)
class Fiber:
    representative: int
    orbit: tuple
    stabilizer: tuple
    extension: ExtensionData
    typical: bool


@dataclass(frozen=True)
class FiberReport:
    fibers: tuple

    @property
    def singular(self):
        return [f for f in self.fibers if not f.typical]

    @property
    def typical(self):
        return [f for f in self.fibers if f.typical]


def fiber_analysis(act) -> FiberReport:
    """One entry per W-orbit: its stabilizer and the pulled-back extension."""
    E, rho = act.source, act.rho
    orbits, stabs = orbits_and_stabilizers(rho)
    fibers = []
    for orb in orbits:
        w = orb[0]
        H, embed = E.Q.subgroup(stabs[w])
        fibers.append(Fiber(w, orb, stabs[w], pullback(E, H, embed), len(stabs[w]) == 1))
    return FiberReport(tuple(fibers))


def injectivity_check(phi, rho: PermAction) -> Check:
    """Is ``alpha -> (phi(alpha), rho(alpha))`` injective?  Witness: a kernel element."""
    Q = rho.group
    k = phi.rank
    ident = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    nop = tuple(range(rho.npoints))
    for a in Q.nonidentity():
        M = phi.action[a] if isinstance(phi, CoefModule) else phi.matrix(a)
        if tuple(tuple(Fraction(x) for x in r) for r in M) == ident and rho.perm[a] == nop:
            return Check(False, "kernel", (a,))
    return PASS


# ---------------------------------------------------------------------------
# strict equivalence

def conjugate_action(act: ConstructedAction, lam0) -> ConstructedAction:
    """The action ``mu(lam0) o theta o mu(lam0)^-1`` with ``mu(lam0) = (lam0, I, id)``.

    ``lam0`` is a W-table of k-vectors.
    """
    FM = act.fmodule
    v0 = FM.flatten(lam0)
    Q = FM.group
    new = tuple(FM.sub(act.lam.values[a], FM.sub(v0, FM.act(a, v0))) for a in Q)
    return ConstructedAction(act.source, act.rho, Cochain1(FM, new), dict(act.report))


def _same_extension(E1, E2):
    return (E1.Q == E2.Q and E1.module.rank == E2.module.rank
            and E1.module.moduli == E2.module.moduli
            and all(E1.module.act(a, v) == E2.module.act(a, v)
                    for a in E1.Q for v in box_vectors(E1.module, 1))
            and E1.f == E2.f)


def conjugation_check(act1, act2, lam0, radius=1) -> Check:
    """``theta2(x) == mu(lam0) theta1(x) mu(lam0)^-1`` on the test box."""
    m = pure_lam(lam0)
    mi = u_inverse(m)
    for x in elements(act1.source, radius):
        if u_compose(u_compose(m, act1.theta(x)), mi) != act2.theta(x):
            return Check(False, "conjugation", (x,))
    return PASS


def strict_equiv(act1: ConstructedAction, act2: ConstructedAction, radius=1):
    """Find ``lam0: W -> Q^k`` with ``theta2 = mu(lam0) theta1 mu(lam0)^-1``.

    Solves ``lam0 - alpha.lam0 = lam1(alpha) - lam2(alpha)`` over Q with
    free coordinates set to zero; returns the W-table or None.  The
    witness is only determined up to phi-invariant constants.
    """
    if act1.rho.perm != act2.rho.perm:
        raise RigidityRegimeError("the W-actions differ: strict equivalence does not apply (rigidity regime)")
    if not _same_extension(act1.source, act2.source):
        raise EngineError("the actions realize different extensions")
    FM = act1.fmodule
    Q = FM.group
    n = FM.rank
    rows, rhs = [], []
    for a in Q.nonidentity():
        M = FM.matrix(a)
        diff = FM.sub(act1.lam.values[a], act2.lam.values[a])
        for i in range(n):
            rows.append([int(i == j) - M[i][j] for j in range(n)])
            rhs.append(diff[i])
    sol = intmat.solve_rational(rows, rhs, n) if rows else [Fraction(0)] * n
    if sol is None:
        return None
    lam0 = FM.table(sol)
    chk = conjugation_check(act1, act2, lam0, radius)
    if not chk:
        raise AssertionError(f"internal: conjugation identity fails at {chk.witness}")
    return lam0

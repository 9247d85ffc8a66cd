"""Heisenberg group arithmetic, its standard lattices, and affine maps.

Elements ``(z, x, y)`` correspond to unitriangular matrices
``[[1, x, z], [0, 1, y], [0, 0, 1]]`` and multiply as

    (z', x', y')(z, x, y) = (z' + z + x' y, x' + x, y' + y).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import intmat
from .cochains import Check, PASS


class HeisElement(NamedTuple):
    z: Fraction
    x: Fraction
    y: Fraction


def heis(z, x, y) -> HeisElement:
    return HeisElement(Fraction(z), Fraction(x), Fraction(y))


IDENTITY = heis(0, 0, 0)


def heis_mul(g, h) -> HeisElement:
    return HeisElement(g[0] + h[0] + g[1] * h[2], g[1] + h[1], g[2] + h[2])


def heis_inv(g) -> HeisElement:
    z, x, y = g
    return HeisElement(-z + x * y, -x, -y)


def heis_pow(g, n):
    if n < 0:
        g, n = heis_inv(g), -n
    r = IDENTITY
    for _ in range(n):
        r = heis_mul(r, g)
    return r


def commutator(g, h):
    """``g h g^-1 h^-1``."""
    return heis_mul(heis_mul(g, h), heis_mul(heis_inv(g), heis_inv(h)))


def to_matrix(g):
    z, x, y = (Fraction(c) for c in g)
    return ((Fraction(1), x, z), (Fraction(0), Fraction(1), y), (Fraction(0), Fraction(0), Fraction(1)))


def from_matrix(M) -> HeisElement:
    expect = {(0, 0): 1, (1, 0): 0, (1, 1): 1, (2, 0): 0, (2, 1): 0, (2, 2): 1}
    for (i, j), v in expect.items():
        if M[i][j] != v:
            raise ValueError("matrix is not upper unitriangular")
    return heis(M[0][2], M[0][1], M[1][2])


def matrix_mul(A, B):
    return tuple(tuple(sum(A[i][t] * B[t][j] for t in range(3)) for j in range(3)) for i in range(3))


# ---------------------------------------------------------------------------
# the lattice generated by alpha, beta, gamma

def lattice_generators(p):
    """``alpha = (0,1,0)``, ``beta = (0,0,1)``, ``gamma = (1/p,0,0)``."""
    if p == 0:
        raise ValueError("p must be nonzero")
    return heis(0, 1, 0), heis(0, 0, 1), heis(Fraction(1, p), 0, 0)


def generator_action(name, p, q) -> HeisElement:
    """The tabulated action of a lattice generator on a point of N."""
    z, x, y = (Fraction(c) for c in q)
    if name == "alpha":
        return HeisElement(z + y, x + 1, y)
    if name == "beta":
        return HeisElement(z, x, y + 1)
    if name == "gamma":
        if p == 0:
            raise ValueError("p must be nonzero")
        return HeisElement(z + Fraction(1, p), x, y)
    raise ValueError(f"unknown generator {name!r}")


GENERATORS = ("alpha", "beta", "gamma")


def lattice_relations(p) -> Check:
    """``[alpha, beta] = gamma^p`` and gamma central."""
    a, b, c = lattice_generators(p)
    if commutator(a, b) != heis_pow(c, p):
        return Check(False, "[alpha,beta] = gamma^p", ("alpha", "beta"))
    for name, g in (("alpha", a), ("beta", b)):
        if commutator(g, c) != IDENTITY:
            return Check(False, "gamma central", (name, "gamma"))
    return PASS


def random_point(rng: random.Random, spread=20, den=12) -> HeisElement:
    return heis(*(Fraction(rng.randint(-spread, spread), rng.randint(1, den)) for _ in range(3)))


def action_is_left_mult(p, points) -> Check:
    """The generator action agrees with left multiplication on every point."""
    gens = dict(zip(GENERATORS, lattice_generators(p)))
    for q in points:
        for name in GENERATORS:
            if generator_action(name, p, q) != heis_mul(gens[name], q):
                return Check(False, "left multiplication", (name, tuple(q)))
    return PASS


# ---------------------------------------------------------------------------
# affine maps x -> b + A x

@dataclass(frozen=True)
class AffineMap:
    A: tuple
    b: tuple

    def __post_init__(self):
        A = tuple(tuple(Fraction(c) for c in r) for r in self.A)
        b = tuple(Fraction(c) for c in self.b)
        if len(A) != len(b) or any(len(r) != len(b) for r in A):
            raise ValueError("dimension mismatch")
        if intmat.det(A) == 0:
            raise ValueError("linear part is not invertible")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def dim(self):
        return len(self.b)

    def __call__(self, x):
        return affine_apply(self, x)


def affine_identity(n):
    return AffineMap(intmat.identity(n), (0,) * n)


def affine_apply(m: AffineMap, x):
    if len(x) != m.dim:
        raise ValueError("dimension mismatch")
    return tuple(bi + sum(a * Fraction(c) for a, c in zip(row, x)) for bi, row in zip(m.b, m.A))


def affine_compose(m1: AffineMap, m2: AffineMap) -> AffineMap:
    """``m1`` after ``m2``: ``(A C, b + A d)``."""
    if m1.dim != m2.dim:
        raise ValueError("dimension mismatch")
    return AffineMap(intmat.matmul(m1.A, m2.A), affine_apply(m1, m2.b))


def affine_inverse(m: AffineMap) -> AffineMap:
    Ai = intmat.inverse(m.A)
    return AffineMap(Ai, tuple(-c for c in intmat.matvec(Ai, m.b)))


def conjugate_verify(gens1, gens2, cand: AffineMap) -> Check:
    """``cand gens1[i] cand^-1 == gens2[i]`` for every i; witness is the index."""
    if len(gens1) != len(gens2):
        raise ValueError("generator lists differ in length")
    ci = affine_inverse(cand)
    for i, (g1, g2) in enumerate(zip(gens1, gens2)):
        if affine_compose(affine_compose(cand, g1), ci) != g2:
            return Check(False, "conjugation", (i,))
    return PASS

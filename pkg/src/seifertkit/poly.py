"""Sparse multivariate polynomials over Q and polynomial self-maps of Q^K.

A :class:`Poly` is a mapping from exponent tuples to nonzero Fractions, so
two polynomials are equal exactly when their canonical dicts agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intmat


class PolyError(ValueError):
    pass


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise PolyError(f"bad exponent vector {exps} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise PolyError("polynomials in different numbers of variables")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise PolyError("negative power")
        r = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({self.nvars}, {self.format()})"

    @property
    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def variables(self):
        """Indices of variables that occur."""
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def coeff(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def __call__(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            m = c
            for x, k in zip(point, e):
                if k:
                    m *= Fraction(x) ** k
            total += m
        return total

    def substitute(self, polys):
        """Replace variable i by ``polys[i]`` (all in a common number of variables)."""
        if len(polys) != self.nvars:
            raise PolyError("substitution needs one polynomial per variable")
        n = polys[0].nvars if polys else 0
        out = Poly(n)
        cache = {}
        for e, c in self.terms.items():
            m = Poly.const(n, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[i, k] = polys[i] ** k
                    m = m * cache[i, k]
            out = out + m
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def format(self, names=None):
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"{c}*{mono}")
        return " + ".join(out).replace("+ -", "- ")


@dataclass(frozen=True, eq=False)
class PolyMap:
    """``x -> (P_1(x), ..., P_K(x))`` with an optional verified inverse."""

    components: tuple
    inverse_components: tuple = None

    def __post_init__(self):
        comps = tuple(self.components)
        K = len(comps)
        if any(not isinstance(p, Poly) or p.nvars != K for p in comps):
            raise PolyError(f"a self-map of Q^{K} needs {K} polynomials in {K} variables")
        object.__setattr__(self, "components", comps)
        if self.inverse_components is not None:
            inv = tuple(self.inverse_components)
            if len(inv) != K or any(p.nvars != K for p in inv):
                raise PolyError("inverse has the wrong shape")
            object.__setattr__(self, "inverse_components", inv)
            ident = identity_map(K).components
            if (_subst(comps, inv) != ident) or (_subst(inv, comps) != ident):
                raise PolyError("stored inverse does not compose to the identity")

    @property
    def dim(self):
        return len(self.components)

    @property
    def degree(self):
        return max((p.degree for p in self.components), default=0)

    @property
    def has_inverse(self):
        return self.inverse_components is not None

    @property
    def inverse(self) -> "PolyMap":
        if self.inverse_components is None:
            raise PolyError("no inverse stored")
        return _plain(self.inverse_components, self.components)

    def __eq__(self, other):
        return isinstance(other, PolyMap) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __call__(self, point):
        return tuple(p(point) for p in self.components)

    def format(self, names=None):
        return "(" + ", ".join(p.format(names) for p in self.components) + ")"


def _subst(outer, inner):
    return tuple(p.substitute(inner) for p in outer)


def identity_map(K) -> PolyMap:
    xs = [Poly.var(K, i) for i in range(K)]
    return _plain(xs, xs)


def _plain(components, inverse=None):
    """Trusted constructor: skips the inverse check."""
    m = object.__new__(PolyMap)
    object.__setattr__(m, "components", tuple(components))
    object.__setattr__(m, "inverse_components", None if inverse is None else tuple(inverse))
    return m


def poly_compose(P: PolyMap, Q: PolyMap) -> PolyMap:
    """``P o Q``; the inverse ``Q^-1 o P^-1`` is carried when both are stored."""
    if P.dim != Q.dim:
        raise PolyError("dimension mismatch")
    comps = _subst(P.components, Q.components)
    inv = None
    if P.has_inverse and Q.has_inverse:
        inv = _subst(Q.inverse_components, P.inverse_components)
    return _plain(comps, inv)


def poly_inverse(P: PolyMap) -> PolyMap:
    return P.inverse


def affine_polymap(A, b, inverse=True) -> PolyMap:
    """``x -> A x + b`` with its inverse when A is invertible."""
    K = len(b)
    xs = [Poly.var(K, i) for i in range(K)]

    def build(M, v):
        return [sum((Fraction(M[i][j]) * xs[j] for j in range(K)), Poly.const(K, v[i])) for i in range(K)]

    comps = build(A, b)
    if not inverse:
        return _plain(comps)
    Ai = intmat.inverse(A)
    bi = [-c for c in intmat.matvec(Ai, b)]
    return _plain(comps, build(Ai, bi))


def translation_polymap(t) -> PolyMap:
    return affine_polymap(intmat.identity(len(t)), t)


def permutation_polymap(perm) -> PolyMap:
    """``x -> (x_perm[0], ..., x_perm[K-1])``."""
    K = len(perm)
    A = [[int(j == perm[i]) for j in range(K)] for i in range(K)]
    return affine_polymap(A, [0] * K)


def with_inverse(components, inverse_components) -> PolyMap:
    """Build a map with a stored inverse, checking both compositions."""
    return PolyMap(tuple(components), tuple(inverse_components))


# ---------------------------------------------------------------------------
# JSON: {"monomials": [{"coef": "p/q", "exps": [...]}]}

def poly_to_json(p: Poly):
    return {"monomials": [{"coef": _frac(c), "exps": list(e)} for e, c in p.sorted_terms()]}


def _frac(c):
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def poly_from_json(obj, nvars, path="poly") -> Poly:
    if not isinstance(obj, dict) or not isinstance(obj.get("monomials"), list):
        raise PolyError(f"{path}: expected an object with a 'monomials' list")
    terms = {}
    for i, m in enumerate(obj["monomials"]):
        where = f"{path}.monomials[{i}]"
        if not isinstance(m, dict) or "coef" not in m or "exps" not in m:
            raise PolyError(f"{where}: expected {{'coef', 'exps'}}")
        try:
            c = Fraction(m["coef"])
        except (ValueError, TypeError, ZeroDivisionError):
            raise PolyError(f"{where}.coef: not a rational") from None
        e = m["exps"]
        if not isinstance(e, list) or len(e) != nvars or not all(isinstance(x, int) and x >= 0 for x in e):
            raise PolyError(f"{where}.exps: expected {nvars} non-negative integers")
        terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return Poly(nvars, terms)


def polymap_to_json(P: PolyMap):
    out = {"components": [poly_to_json(p) for p in P.components]}
    if P.has_inverse:
        out["inverse"] = [poly_to_json(p) for p in P.inverse_components]
    return out


def polymap_from_json(obj, path="map") -> PolyMap:
    if not isinstance(obj, dict) or not isinstance(obj.get("components"), list):
        raise PolyError(f"{path}: expected an object with a 'components' list")
    K = len(obj["components"])
    comps = [poly_from_json(c, K, f"{path}.components[{i}]") for i, c in enumerate(obj["components"])]
    inv = obj.get("inverse")
    if inv is None:
        return _plain(comps)
    if not isinstance(inv, list) or len(inv) != K:
        raise PolyError(f"{path}.inverse: expected {K} polynomials")
    inv = [poly_from_json(c, K, f"{path}.inverse[{i}]") for i, c in enumerate(inv)]
    try:
        return PolyMap(tuple(comps), tuple(inv))
    except PolyError as exc:
        raise PolyError(f"{path}.inverse: {exc}") from None

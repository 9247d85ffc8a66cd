"""Invariants of Seifert symbols ``{g; b; (a_1, b_1), ..., (a_p, b_p)}``.

    e   = -(b + sum b_j / a_j)
    chi = (2 - 2g) - sum (1 - 1/a_j)
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction


class SymbolError(ValueError):
    pass


@dataclass(frozen=True)
class SeifertSymbol:
    g: int
    b: int
    cones: tuple = field(default=())

    def __post_init__(self):
        cones = tuple((int(a), int(bt)) for a, bt in self.cones)
        if self.g < 0:
            raise SymbolError("genus must be >= 0")
        for a, _ in cones:
            if a < 2:
                raise SymbolError(f"cone order {a} must be >= 2")
        object.__setattr__(self, "cones", cones)

    @classmethod
    def parse(cls, text: str) -> "SeifertSymbol":
        """Parse ``"g;b;(a1,b1),(a2,b2)"``; the cone part may be empty."""
        parts = text.strip().split(";")
        if len(parts) not in (2, 3):
            raise SymbolError(f"expected 'g;b;cones', got {text!r}")
        try:
            g, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise SymbolError(f"genus and b must be integers in {text!r}") from None
        rest = parts[2].strip() if len(parts) == 3 else ""
        cones = []
        if rest:
            pat = r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)"
            if re.sub(pat, "", rest).replace(",", "").strip():
                raise SymbolError(f"malformed cone list {rest!r}")
            cones = [(int(a), int(bt)) for a, bt in re.findall(pat, rest)]
        return cls(g, b, tuple(cones))

    def __str__(self):
        return f"{self.g};{self.b};" + ",".join(f"({a},{bt})" for a, bt in self.cones)

    @property
    def p(self):
        return len(self.cones)

    def to_json(self):
        return {"g": self.g, "b": self.b, "cones": [list(c) for c in self.cones]}


def euler_number(sym: SeifertSymbol) -> Fraction:
    return -(sym.b + sum((Fraction(bt, a) for a, bt in sym.cones), Fraction(0)))


def base_euler_char(sym: SeifertSymbol) -> Fraction:
    return (2 - 2 * sym.g) - sum((1 - Fraction(1, a) for a, _ in sym.cones), Fraction(0))


def pushforward_class(sym: SeifertSymbol):
    """``(L, L e)`` with L the lcm of the cone orders (1 without cones)."""
    L = math.lcm(*(a for a, _ in sym.cones)) if sym.cones else 1
    return L, L * euler_number(sym)


def infinite_order(sym: SeifertSymbol) -> bool:
    return euler_number(sym) != 0


def base_type(chi) -> str:
    if chi < 0:
        return "hyperbolic"
    return "euclidean" if chi == 0 else "spherical"


def deformation_dims(sym: SeifertSymbol):
    """``(2g, 6g - 6 + 2p)``; only defined over a hyperbolic base."""
    if base_euler_char(sym) >= 0:
        raise SymbolError(f"base orbifold of {sym} is not hyperbolic")
    return 2 * sym.g, 6 * sym.g - 6 + 2 * sym.p


@dataclass(frozen=True)
class InvariantReport:
    symbol: SeifertSymbol
    e: Fraction
    chi: Fraction
    L: int
    pushforward: Fraction
    infinite_order: bool
    base_type: str
    psl_realizable: bool
    h1_rank: int | None
    teich_dim: int | None
    note: str

    def to_json(self):
        from .serialize import frac
        return {
            "symbol": str(self.symbol),
            "e": frac(self.e),
            "chi": frac(self.chi),
            "L": self.L,
            "pushforward": frac(self.pushforward),
            "infinite_order": self.infinite_order,
            "base_type": self.base_type,
            "psl_realizable": self.psl_realizable,
            "h1_rank": self.h1_rank,
            "teich_dim": self.teich_dim,
            "fiber": f"T^{self.h1_rank}" if self.h1_rank is not None else None,
            "note": self.note,
        }


def geometry_report(sym: SeifertSymbol) -> InvariantReport:
    e = euler_number(sym)
    chi = base_euler_char(sym)
    L, push = pushforward_class(sym)
    kind = base_type(chi)
    psl = chi < 0 and e != 0
    if kind == "hyperbolic":
        h1, teich = deformation_dims(sym)
        note = "PSL2~ geometry" if psl else "e = 0 over a hyperbolic base: not classified here"
    else:
        h1 = teich = None
        note = f"{kind} base: not classified here"
    return InvariantReport(sym, e, chi, L, push, e != 0, kind, psl, h1, teich, note)


# ---------------------------------------------------------------------------
# normalization moves

def normalized(sym: SeifertSymbol) -> SeifertSymbol:
    """Move every b_j into ``[0, a_j)`` by adjusting b; e is unchanged."""
    b = sym.b
    cones = []
    for a, bt in sym.cones:
        q, r = divmod(bt, a)
        b += q
        cones.append((a, r))
    return SeifertSymbol(sym.g, b, tuple(sorted(cones)))


def reversed_orientation(sym: SeifertSymbol) -> SeifertSymbol:
    return SeifertSymbol(sym.g, -sym.b, tuple((a, -bt) for a, bt in sym.cones))


def abs_euler_preserved(sym: SeifertSymbol) -> bool:
    """|e| agrees across the symbol, its normal form and its reversal."""
    e = abs(euler_number(sym))
    return all(abs(euler_number(s)) == e
               for s in (normalized(sym), reversed_orientation(sym), normalized(reversed_orientation(sym))))


def enumerate_symbols(max_genus=2, max_cones=3, max_order=5, max_b=3, max_beta=3):
    """All symbols within the bounds; cone lists taken as multisets."""
    pairs = [(a, bt) for a in range(2, max_order + 1) for bt in range(-max_beta, max_beta + 1)]
    for g in range(max_genus + 1):
        for p in range(max_cones + 1):
            for cones in itertools.combinations_with_replacement(pairs, p):
                for b in range(-max_b, max_b + 1):
                    yield SeifertSymbol(g, b, cones)

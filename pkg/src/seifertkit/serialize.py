"""JSON encoding and schema checks.

Every parser takes the JSON path of the value it reads and raises
:class:`SchemaError` naming that path on the first violation.
Rationals are written as ``"p/q"`` strings.
"""

from __future__ import annotations

from fractions import Fraction

from .cochains import Cochain2, RationalModule
from .groups import (
    CoefModule, FiniteGroup, FpPresentation, GroupError, build_cyclic, build_dihedral, build_direct_product,
    build_symmetric, validate_action, validate_group, validate_module,
)


class SchemaError(ValueError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


def frac(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def fvec(v):
    return [frac(c) for c in v]


def parse_frac(x, path) -> Fraction:
    if isinstance(x, bool):
        raise SchemaError(path, "expected a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise SchemaError(path, f"expected a rational 'p/q', got {x!r}")


def parse_int(x, path, minimum=None) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(path, f"expected an integer, got {x!r}")
    if minimum is not None and x < minimum:
        raise SchemaError(path, f"expected an integer >= {minimum}")
    return x


def parse_list(x, path, length=None):
    if not isinstance(x, list):
        raise SchemaError(path, "expected a list")
    if length is not None and len(x) != length:
        raise SchemaError(path, f"expected {length} entries, got {len(x)}")
    return x


def require(obj, key, path):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if key not in obj:
        raise SchemaError(f"{path}.{key}" if path else key, "missing")
    return obj[key]


def _sub(path, key):
    return f"{path}.{key}" if path else str(key)


# ---------------------------------------------------------------------------
# groups

def named_group(spec: str, path="group") -> FiniteGroup:
    """``cyclic:n``, ``dihedral:n`` (order 2n), ``symmetric:n``, ``klein``."""
    name, _, arg = spec.partition(":")
    if name == "klein" and not arg:
        return build_direct_product(build_cyclic(2), build_cyclic(2))
    try:
        n = int(arg)
    except ValueError:
        raise SchemaError(path, f"unknown group {spec!r}") from None
    if n < 1 or (name == "symmetric" and n > 5):
        raise SchemaError(path, f"group parameter out of range in {spec!r}")
    if name == "cyclic":
        return build_cyclic(n)
    if name == "dihedral":
        return build_dihedral(n)
    if name == "symmetric":
        return build_symmetric(n)[0]
    raise SchemaError(path, f"unknown group {spec!r}")


def check_mult_shape(mult, path):
    rows = parse_list(mult, path)
    n = len(rows)
    if n == 0:
        raise SchemaError(path, "empty table")
    for i, r in enumerate(rows):
        parse_list(r, f"{path}[{i}]")
        if len(r) != n:
            raise SchemaError(path, f"table is not square (row {i} has {len(r)} entries, expected {n})")
        for j, x in enumerate(r):
            parse_int(x, f"{path}[{i}][{j}]")
            if not 0 <= x < n:
                raise SchemaError(f"{path}[{i}][{j}]", f"entry {x} out of range 0..{n - 1}")
    return rows


def parse_group(obj, path="Q") -> FiniteGroup:
    """A group from a name string, ``{"cyclic": n}`` or ``{"mult": table}``.

    Axiom failures raise :class:`GroupError` (a check failure, not a schema error).
    """
    if isinstance(obj, str):
        return named_group(obj, path)
    if isinstance(obj, dict) and "cyclic" in obj:
        return build_cyclic(parse_int(obj["cyclic"], _sub(path, "cyclic"), 1))
    mult = check_mult_shape(require(obj, "mult", path), _sub(path, "mult"))
    G = validate_group(mult)
    if G.labels != tuple(range(G.order)):
        raise SchemaError(_sub(path, "mult"), "element 0 must be the identity")
    return G


def group_to_json(G: FiniteGroup):
    return {"order": G.order, "mult": [list(r) for r in G.mult]}


# ---------------------------------------------------------------------------
# modules

def _matrix(x, k, path, rational=False):
    rows = parse_list(x, path, k)
    conv = parse_frac if rational else parse_int
    return [[conv(c, f"{path}[{i}][{j}]") for j, c in enumerate(parse_list(r, f"{path}[{i}]", k))]
            for i, r in enumerate(rows)]


def named_module(spec: str, Q: FiniteGroup, path="module") -> CoefModule:
    """``trivial-Z``, ``sign-Z`` (cyclic groups of even order) or ``trivial-Z/m``."""
    from .groups import sign_module, trivial_module
    if spec == "trivial-Z":
        return trivial_module(Q)
    if spec.startswith("trivial-Z/"):
        try:
            m = int(spec.split("/", 1)[1])
        except ValueError:
            raise SchemaError(path, f"unknown module {spec!r}") from None
        if m < 2:
            raise SchemaError(path, "modulus must be >= 2")
        return trivial_module(Q, 1, [m])
    if spec == "sign-Z":
        if Q.order % 2:
            raise SchemaError(path, "sign-Z needs a group of even order")
        if all(Q.mult[a][b] == Q.mult[b][a] for a in Q for b in Q) and _is_cyclic(Q):
            g = next(a for a in Q if Q.element_order(a) == Q.order)
            signs = [0] * Q.order
            x = 0
            for i in range(Q.order):
                signs[x] = -1 if i % 2 else 1
                x = Q.mult[x][g]
            return sign_module(Q, signs)
        raise SchemaError(path, "sign-Z is only offered for cyclic groups; give explicit matrices")
    raise SchemaError(path, f"unknown module {spec!r}")


def _is_cyclic(Q):
    return any(Q.element_order(a) == Q.order for a in Q)


def parse_module(obj, Q: FiniteGroup, path="module"):
    """``{"rank", "moduli"?, "action"?, "rational"?}`` or a module name.

    ``action`` lists one k x k matrix per element of Q (default trivial).
    """
    if isinstance(obj, str):
        return named_module(obj, Q, path)
    k = parse_int(require(obj, "rank", path), _sub(path, "rank"), 0)
    rational = bool(obj.get("rational", False))
    if "action" in obj:
        acts = parse_list(obj["action"], _sub(path, "action"), Q.order)
        mats = [_matrix(M, k, f"{_sub(path, 'action')}[{a}]", rational) for a, M in enumerate(acts)]
    else:
        mats = [[[int(i == j) for j in range(k)] for i in range(k)] for _ in Q]
    if rational:
        from .cochains import rational_module
        if "moduli" in obj and any(obj["moduli"]):
            raise SchemaError(_sub(path, "moduli"), "rational modules have no moduli")
        return rational_module(Q, mats)
    moduli = [parse_int(m, f"{_sub(path, 'moduli')}[{i}]", 0)
              for i, m in enumerate(parse_list(obj.get("moduli", [0] * k), _sub(path, "moduli"), k))]
    return validate_module(Q, k, moduli, mats)


def module_to_json(A):
    if isinstance(A, RationalModule):
        return {"rank": A.rank, "rational": True, "action": [[fvec(r) for r in A.matrix(a)] for a in A.group]}
    return {"rank": A.rank, "moduli": list(A.moduli), "action": [[list(r) for r in A.action[a]] for a in A.group]}


# ---------------------------------------------------------------------------
# cochains

def _vec(x, A, path):
    if A.rank == 1 and not isinstance(x, list):
        x = [x]
    vals = parse_list(x, path, A.rank)
    if isinstance(A, CoefModule):
        return A.reduce(tuple(parse_int(c, f"{path}[{i}]") for i, c in enumerate(vals)))
    return tuple(parse_frac(c, f"{path}[{i}]") for i, c in enumerate(vals))


def parse_cocycle(obj, A, path="cocycle") -> Cochain2:
    """A full table ``[[v]]`` or ``{"entries": [[a, b, v], ...]}`` (unlisted entries are zero)."""
    n = A.group.order
    rows = [[A.zero] * n for _ in range(n)]
    if isinstance(obj, dict):
        for t, e in enumerate(parse_list(require(obj, "entries", path), _sub(path, "entries"))):
            where = f"{_sub(path, 'entries')}[{t}]"
            a, b, v = parse_list(e, where, 3)
            a, b = parse_int(a, f"{where}[0]", 0), parse_int(b, f"{where}[1]", 0)
            if a >= n or b >= n:
                raise SchemaError(where, "group element out of range")
            rows[a][b] = _vec(v, A, f"{where}[2]")
    else:
        table = parse_list(obj, path, n)
        for a, r in enumerate(table):
            for b, v in enumerate(parse_list(r, f"{path}[{a}]", n)):
                rows[a][b] = _vec(v, A, f"{path}[{a}][{b}]")
    return Cochain2(A, tuple(tuple(r) for r in rows))


def _enc(A, v):
    return list(v) if isinstance(A, CoefModule) else fvec(v)


def cochain1_to_json(c):
    return [_enc(c.module, v) for v in c.values]


def cochain2_to_json(c):
    return [[_enc(c.module, v) for v in row] for row in c.values]


def parse_extension(obj, path="extension"):
    """Raises ExtensionError (a check failure) when the cocycle is invalid."""
    from .extensions import ExtensionData
    Q = parse_group(require(obj, "Q", path), _sub(path, "Q"))
    A = parse_module(require(obj, "module", path), Q, _sub(path, "module"))
    f = parse_cocycle(obj.get("cocycle", {"entries": []}), A, _sub(path, "cocycle"))
    return ExtensionData(A, f)


def extension_to_json(E):
    return {"Q": group_to_json(E.Q), "module": module_to_json(E.module), "cocycle": cochain2_to_json(E.f)}


def parse_element(x, A, path):
    a, alpha = parse_list(x, path, 2)
    alpha = parse_int(alpha, f"{path}[1]", 0)
    if alpha >= A.group.order:
        raise SchemaError(f"{path}[1]", "group element out of range")
    return _vec(a, A, f"{path}[0]"), alpha


def element_to_json(x):
    a, alpha = x
    return [[frac(c) if isinstance(c, Fraction) else c for c in a], alpha]


def parse_action(obj, Q, path="action"):
    perm = require(obj, "perm", path)
    if isinstance(perm, dict):
        perm = [perm.get(str(a)) for a in Q]
    rows = parse_list(perm, _sub(path, "perm"), Q.order)
    for a, r in enumerate(rows):
        for i, x in enumerate(parse_list(r, f"{_sub(path, 'perm')}[{a}]")):
            parse_int(x, f"{_sub(path, 'perm')}[{a}][{i}]", 0)
    try:
        return validate_action(Q, rows)
    except GroupError as exc:
        raise SchemaError(_sub(path, "perm"), str(exc)) from None


def presentation_to_json(P: FpPresentation):
    return P.to_json()


def parse_presentation(obj, path="presentation") -> FpPresentation:
    gens = [g for g in parse_list(require(obj, "generators", path), _sub(path, "generators"))]
    if not all(isinstance(g, str) for g in gens) or len(set(gens)) != len(gens):
        raise SchemaError(_sub(path, "generators"), "expected distinct generator names")
    rels = []
    for i, r in enumerate(parse_list(obj.get("relators", []), _sub(path, "relators"))):
        w = [parse_int(s, f"{_sub(path, 'relators')}[{i}][{j}]") for j, s in enumerate(parse_list(r, f"{_sub(path, 'relators')}[{i}]"))]
        if any(s == 0 or abs(s) > len(gens) for s in w):
            raise SchemaError(f"{_sub(path, 'relators')}[{i}]", "letter out of range")
        rels.append(tuple(w))
    central = []
    for i, c in enumerate(parse_list(obj.get("central", []), _sub(path, "central"))):
        if c not in gens:
            raise SchemaError(f"{_sub(path, 'central')}[{i}]", f"unknown generator {c!r}")
        central.append(gens.index(c))
    return FpPresentation(tuple(gens), tuple(rels), tuple(central))

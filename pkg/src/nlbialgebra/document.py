"""JSON problem documents.

Layout (all indices 0-based, rationals as strings ``"p"`` or ``"p/q"``)::

    {
      "name": "euler_top",
      "dimension": 3,
      "basis": ["X1", "X2", "X3"],
      "bracket":   [{"on": [0, 1], "value": {"1": "-1"}}, ...],
      "cobracket": [{"on": 0, "value": [{"pair": [1, 2], "coeff": "-1"}]}, ...],
      "operator":  [["0", "0", "-1"], ...],
      "r_matrix":  [{"pair": [1, 2], "coeff": "1"}, ...]
    }

``operator[i][j]`` is the coefficient of basis vector ``i`` in ``n(X_j)``.
Pairs must be strictly increasing; non-canonical input is rejected rather
than normalized so that digests stay stable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .catalog import Problem
from .errors import ParseError, SchemaError
from .exact import Multivector, Operator, fmt_rational
from .lie import Cochain, LieAlgebra, StructureTensor

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
_KEYS = {"name", "dimension", "basis", "bracket", "cobracket", "operator", "r_matrix"}


@dataclass(frozen=True)
class ProblemDocument:
    name: str
    dimension: int
    basis: tuple
    bracket: tuple  # ((i, j), ((k, Fraction), ...)) sorted
    cobracket: tuple | None = None  # ((i, (((j, k), Fraction), ...)), ...)
    operator: tuple | None = None  # rows of Fractions
    r_matrix: tuple | None = None  # (((i, j), Fraction), ...)


def _rat(x, where: str) -> Fraction:
    if not isinstance(x, str) or not _RATIONAL.match(x):
        raise SchemaError(f"{where}: expected a rational string like \"-3/2\", got {x!r}")
    num, _, den = x.partition("/")
    if den and int(den) == 0:
        raise SchemaError(f"{where}: zero denominator")
    return Fraction(int(num), int(den or 1))


def _index(x, dim: int, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{where}: index must be an integer, got {x!r}")
    if not 0 <= x < dim:
        raise SchemaError(f"{where}: index {x} out of range for dimension {dim}")
    return x


def _pair(x, dim: int, where: str) -> tuple[int, int]:
    if not isinstance(x, list) or len(x) != 2:
        raise SchemaError(f"{where}: expected a pair [i, j]")
    i, j = _index(x[0], dim, where), _index(x[1], dim, where)
    if i == j:
        raise SchemaError(f"{where}: repeated index {i}")
    if i > j:
        raise SchemaError(f"{where}: pair [{i}, {j}] is not increasing")
    return i, j


def _obj(x, keys: set, where: str) -> dict:
    if not isinstance(x, dict):
        raise SchemaError(f"{where}: expected an object")
    missing = keys - set(x)
    extra = set(x) - keys
    if missing:
        raise SchemaError(f"{where}: missing field {sorted(missing)[0]!r}")
    if extra:
        raise SchemaError(f"{where}: unknown field {sorted(extra)[0]!r}")
    return x


def _list(x, where: str) -> list:
    if not isinstance(x, list):
        raise SchemaError(f"{where}: expected an array")
    return x


def _terms(entries, dim: int, where: str) -> tuple:
    seen = {}
    for t, e in enumerate(_list(entries, where)):
        w = f"{where}[{t}]"
        e = _obj(e, {"pair", "coeff"}, w)
        p = _pair(e["pair"], dim, f"{w}.pair")
        if p in seen:
            raise SchemaError(f"{w}.pair: duplicate pair {list(p)}")
        seen[p] = _rat(e["coeff"], f"{w}.coeff")
    return tuple(sorted(seen.items()))


def parse(data: bytes | str) -> ProblemDocument:
    """Validate a JSON document; raises ParseError or SchemaError naming the offending field."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise SchemaError("document: top level must be an object")
    extra = set(raw) - _KEYS
    if extra:
        raise SchemaError(f"document: unknown field {sorted(extra)[0]!r}")
    for key in ("name", "dimension"):
        if key not in raw:
            raise SchemaError(f"document: missing field {key!r}")

    name = raw["name"]
    if not isinstance(name, str):
        raise SchemaError("name: expected a string")
    dim = raw["dimension"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise SchemaError(f"dimension: expected a positive integer, got {dim!r}")

    basis = raw.get("basis", [f"X{i + 1}" for i in range(dim)])
    if (not isinstance(basis, list) or len(basis) != dim
            or not all(isinstance(s, str) and s for s in basis)):
        raise SchemaError(f"basis: expected {dim} non-empty strings")
    if len(set(basis)) != dim:
        raise SchemaError("basis: names must be distinct")

    bracket = {}
    for t, e in enumerate(_list(raw.get("bracket", []), "bracket")):
        w = f"bracket[{t}]"
        e = _obj(e, {"on", "value"}, w)
        p = _pair(e["on"], dim, f"{w}.on")
        if p in bracket:
            raise SchemaError(f"{w}.on: duplicate pair {list(p)}")
        val = e["value"]
        if not isinstance(val, dict):
            raise SchemaError(f"{w}.value: expected an object mapping index to rational")
        coeffs = {}
        for k, c in val.items():
            if not re.fullmatch(r"\d+", k):
                raise SchemaError(f"{w}.value: key {k!r} is not an index")
            coeffs[_index(int(k), dim, f"{w}.value")] = _rat(c, f"{w}.value[{k}]")
        bracket[p] = tuple(sorted(coeffs.items()))

    cobracket = None
    if "cobracket" in raw:
        cob = {}
        for t, e in enumerate(_list(raw["cobracket"], "cobracket")):
            w = f"cobracket[{t}]"
            e = _obj(e, {"on", "value"}, w)
            i = _index(e["on"], dim, f"{w}.on")
            if i in cob:
                raise SchemaError(f"{w}.on: duplicate index {i}")
            cob[i] = _terms(e["value"], dim, f"{w}.value")
        cobracket = tuple(sorted(cob.items()))

    operator = None
    if "operator" in raw:
        rows = _list(raw["operator"], "operator")
        if len(rows) != dim or not all(isinstance(r, list) and len(r) == dim for r in rows):
            raise SchemaError(f"operator: expected a {dim}x{dim} array")
        operator = tuple(tuple(_rat(c, f"operator[{i}][{j}]") for j, c in enumerate(r))
                         for i, r in enumerate(rows))

    r_matrix = _terms(raw["r_matrix"], dim, "r_matrix") if "r_matrix" in raw else None
    return ProblemDocument(name, dim, tuple(basis), tuple(sorted(bracket.items())),
                           cobracket, operator, r_matrix)


def serialize(doc: ProblemDocument) -> str:
    """Canonical JSON text; ``parse(serialize(doc)) == doc``."""
    out: dict = {
        "name": doc.name,
        "dimension": doc.dimension,
        "basis": list(doc.basis),
        "bracket": [{"on": list(p), "value": {str(k): fmt_rational(c) for k, c in v}}
                    for p, v in doc.bracket],
    }
    if doc.cobracket is not None:
        out["cobracket"] = [{"on": i, "value": [{"pair": list(p), "coeff": fmt_rational(c)} for p, c in v]}
                            for i, v in doc.cobracket]
    if doc.operator is not None:
        out["operator"] = [[fmt_rational(c) for c in row] for row in doc.operator]
    if doc.r_matrix is not None:
        out["r_matrix"] = [{"pair": list(p), "coeff": fmt_rational(c)} for p, c in doc.r_matrix]
    return json.dumps(out, indent=2) + "\n"


def _bivector_terms(p: Multivector) -> tuple:
    return tuple(sorted((k, c) for k, c in p.items() if c))


def from_problem(pb: Problem) -> ProblemDocument:
    """Document for a problem; zero coefficients are omitted."""
    g = pb.algebra
    bracket = tuple((p, tuple((k, c) for k, c in enumerate(v) if c))
                    for p, v in sorted(g.bracket.items()) if any(v))
    cob = None
    if pb.cobracket is not None:
        cob = tuple((i, _bivector_terms(pb.cobracket.at(i))) for i in range(pb.dim)
                    if not pb.cobracket.at(i).is_zero())
    op = tuple(tuple(r) for r in pb.operator.rows) if pb.operator is not None else None
    r = _bivector_terms(pb.r_matrix) if pb.r_matrix is not None else None
    return ProblemDocument(pb.name, pb.dim, g.basis, bracket, cob, op, r)


def build(doc: ProblemDocument) -> Problem:
    """Turn a validated document into library objects (Jacobi is checked, not required)."""
    d = doc.dimension
    b = StructureTensor(d, {p: dict(v) for p, v in doc.bracket})
    g = LieAlgebra(b, doc.name, doc.basis)
    cob = None
    if doc.cobracket is not None:
        cob = Cochain(d, 1, 2, {(i,): Multivector(d, 2, dict(v)) for i, v in doc.cobracket})
    op = Operator(doc.operator) if doc.operator is not None else None
    r = Multivector(d, 2, dict(doc.r_matrix)) if doc.r_matrix is not None else None
    return Problem(g, cob, op, r)


__all__ = ["ProblemDocument", "build", "from_problem", "parse", "serialize"]

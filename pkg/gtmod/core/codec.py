"""JSON shapes of the domain objects, both directions.

Tableau:  {"n": 3, "rows": [["2","0","-2"], ["1","1"], ["1"]]}   (top row first)
Shift:    {"rows": [["1","0"], ["0"]]}                        (rows n-1 .. 1)
Spec:     {"family": "FiniteDim", "weight": [1, 0]}
          {"family": "Generic", "v": <tableau>}
          {"family": "OneSingular", "v": <tableau>, "pair": [k, i, j]}
Tag:      {"kind": "Std", "tableau": <tableau>} | {"kind": "Gen"|"Sym"|"Alt", "shift": <shift>}
Vector:   {"spec": <spec>, "terms": [{"tag": <tag>, "coeff": "3/4"}, ...]}
Operator: "E,a,b" or "C,m,t"
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Any, Mapping

from .arith import as_rational, format_rational
from .errors import InputError
from .rep_engine import (
    Alt,
    BasisTag,
    Casimir,
    FiniteDim,
    Gen,
    Generator,
    Generic,
    ModuleSpec,
    ModuleVector,
    OneSingular,
    Operator,
    Std,
    Sym,
)
from .tableaux import Classification, ShiftVector, SingularPair, Tableau

log = logging.getLogger(__name__)


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from None


def _require(obj: Any, key: str, what: str) -> Any:
    if not isinstance(obj, Mapping) or key not in obj:
        raise InputError(f"{what} needs a {key!r} field")
    return obj[key]


def _rows(obj: Any, what: str) -> list[list[Any]]:
    rows = _require(obj, "rows", what)
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{what} rows must be a list of lists")
    return rows


# ---------- decoding ----------

def parse_tableau(obj: Any) -> Tableau:
    rows = _rows(obj, "tableau")
    t = Tableau.from_top_rows(rows)
    if "n" in obj and obj["n"] != t.n:
        raise InputError(f"tableau declares n={obj['n']} but has {t.n} rows")
    return t


def parse_shift(obj: Any, n: int | None = None) -> ShiftVector:
    rows = _rows(obj, "shift vector")
    z = ShiftVector.from_top_rows(rows)
    if n is not None and z.n != n:
        raise InputError(f"shift vector has size {z.n}, expected {n}")
    return z


def parse_pair(obj: Any) -> SingularPair:
    if not isinstance(obj, list) or len(obj) != 3 or not all(isinstance(x, int) for x in obj):
        raise InputError(f"pair must be [k, i, j], got {obj!r}")
    return SingularPair(*obj)


@dataclass(frozen=True)
class ParsedSpec:
    spec: ModuleSpec
    # added to every shift label read against the input v (1-singular normalization)
    offset: ShiftVector | None = None


def parse_spec(obj: Any) -> ParsedSpec:
    family = _require(obj, "family", "spec")
    if family == "FiniteDim":
        weight = _require(obj, "weight", "FiniteDim spec")
        if not isinstance(weight, list):
            raise InputError("weight must be a list")
        return ParsedSpec(FiniteDim(tuple(as_rational(w) for w in weight)))
    if family == "Generic":
        return ParsedSpec(Generic(parse_tableau(_require(obj, "v", "Generic spec"))))
    if family == "OneSingular":
        v = parse_tableau(_require(obj, "v", "OneSingular spec"))
        pair = parse_pair(_require(obj, "pair", "OneSingular spec"))
        spec, offset = OneSingular.normalized(v, pair)
        if offset.norm1():
            log.info("normalized 1-singular %s to critical %s (offset %s)", v, spec.v, offset)
            return ParsedSpec(spec, offset)
        return ParsedSpec(spec)
    raise InputError(f"unknown module family {family!r}")


def parse_tag(obj: Any, parsed: ParsedSpec) -> BasisTag:
    kind = _require(obj, "kind", "tag")
    n = parsed.spec.n
    if kind == "Std":
        return Std(parse_tableau(_require(obj, "tableau", "Std tag")))
    if kind not in ("Gen", "Sym", "Alt"):
        raise InputError(f"unknown tag kind {kind!r}")
    z = parse_shift(_require(obj, "shift", f"{kind} tag"), n)
    if parsed.offset is not None:
        z = z + parsed.offset
    return {"Gen": Gen, "Sym": Sym, "Alt": Alt}[kind](z)


def parse_vector(obj: Any, parsed: ParsedSpec | None = None) -> ModuleVector:
    """Read a vector; its own "spec" field is used unless ``parsed`` is given."""
    if parsed is None:
        parsed = parse_spec(_require(obj, "spec", "vector"))
    terms = _require(obj, "terms", "vector")
    if not isinstance(terms, list):
        raise InputError("vector terms must be a list")
    pairs = []
    for t in terms:
        pairs.append((parse_tag(_require(t, "tag", "term"), parsed), as_rational(_require(t, "coeff", "term"))))
    return ModuleVector.build(parsed.spec, pairs)


def parse_operator(text: str) -> Operator:
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 3 or parts[0].upper() not in ("E", "C"):
        raise InputError(f"operator must look like 'E,a,b' or 'C,m,t', got {text!r}")
    try:
        a, b = int(parts[1]), int(parts[2])
    except ValueError:
        raise InputError(f"operator indices must be integers: {text!r}") from None
    return Generator(a, b) if parts[0].upper() == "E" else Casimir(a, b)


# ---------- encoding ----------

def _rat_rows(rows) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in rows]


def encode_tableau(t: Tableau) -> dict:
    return {"n": t.n, "rows": _rat_rows(t.top_rows())}


def encode_shift(z: ShiftVector) -> dict:
    return {"rows": _rat_rows(z.lower_rows())}


def encode_spec(spec: ModuleSpec) -> dict:
    if isinstance(spec, FiniteDim):
        return {"family": spec.family, "weight": [format_rational(w) for w in spec.weight]}
    if isinstance(spec, Generic):
        return {"family": spec.family, "v": encode_tableau(spec.v)}
    return {"family": spec.family, "v": encode_tableau(spec.v), "pair": list(spec.pair.as_tuple())}


def encode_tag(tag: BasisTag) -> dict:
    if isinstance(tag, Std):
        return {"kind": tag.kind, "tableau": encode_tableau(tag.tableau)}
    return {"kind": tag.kind, "shift": encode_shift(tag.shift)}


def encode_vector(vec: ModuleVector) -> dict:
    return {
        "spec": encode_spec(vec.spec),
        "terms": [{"tag": encode_tag(t), "coeff": format_rational(c)} for t, c in vec.terms],
    }


def encode_classification(c: Classification) -> dict:
    return {
        "standard": c.standard,
        "generic": c.generic,
        "integral": c.integral,
        "singular": c.singular,
        "is_1_singular": c.is_1_singular,
        "is_1_critical": c.is_1_critical,
        "singular_pairs": [list(p) for p in c.singular_pairs],
        "critical_pairs": [list(p) for p in c.critical_pairs],
        "integer_classes": [{"row": k, "columns": list(cols)} for k, cols in c.integer_classes],
    }


def encode_operator(op: Operator) -> str:
    if isinstance(op, Casimir):
        return f"C,{op.m},{op.t}"
    return f"E,{op.a},{op.b}"

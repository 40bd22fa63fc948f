"""JSON problem files and reports.

Problem files carry ``"schema": "atlas/v1"``; reports carry
``"schema": "atlas-report/v1"``.  Rationals are strings "num/den" (a bare
integer string is accepted on input).  Reports are serialized with sorted
keys so identical input gives identical bytes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

import jsonschema

from .cochains import FLAVORS, ParameterA, ParameterB, PolyCochain
from .errors import InputError
from .groups import ModulusData

INPUT_SCHEMA_ID = "atlas/v1"
REPORT_SCHEMA_ID = "atlas-report/v1"

_RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_INDEX = {"type": "array", "items": {"type": "integer", "minimum": 0}}

INPUT_SCHEMA = {
    "type": "object",
    "required": ["schema"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": INPUT_SCHEMA_ID},
        "description": {"type": "string"},
        "rank": {"type": "integer", "minimum": 1},
        "modulus": {
            "type": "object",
            "required": ["p", "q"],
            "additionalProperties": False,
            "properties": {
                "p": {"type": "array", "minItems": 1, "items": {"type": "integer"}},
                "q": {"type": "array", "minItems": 1, "items": {"type": "integer"}},
            },
        },
        "a": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "value"],
                "additionalProperties": False,
                "properties": {"index": {**_INDEX, "minItems": 3, "maxItems": 3}, "value": _RATIONAL},
            },
        },
        "b": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "value"],
                "additionalProperties": False,
                "properties": {"index": {**_INDEX, "minItems": 2, "maxItems": 2}, "value": _RATIONAL},
            },
        },
        "cochain": {
            "type": "object",
            "required": ["rank", "arity", "terms"],
            "additionalProperties": False,
            "properties": {
                "rank": {"type": "integer", "minimum": 1},
                "arity": {"type": "integer", "minimum": 0},
                "flavor": {"enum": sorted(FLAVORS)},
                "terms": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["monomial", "coefficient"],
                        "additionalProperties": False,
                        "properties": {
                            # one entry per slot; a slot is a list of labels [i] or [j, k]
                            "monomial": {"type": "array", "items": {"type": "array", "items": _INDEX}},
                            "coefficient": _RATIONAL,
                        },
                    },
                },
            },
        },
        "options": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "samples": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer", "minimum": 0},
                "character": {
                    "type": "object",
                    "required": ["x", "y"],
                    "additionalProperties": False,
                    "properties": {"x": _RATIONAL, "y": _RATIONAL},
                },
            },
        },
    },
}

_COORDINATE = {
    "oneOf": [
        {"type": "object", "required": ["mod", "value"], "additionalProperties": False, "properties": {
            "mod": {"type": "integer", "minimum": 1}, "value": {"type": "string", "pattern": r"^\d+$"}}},
        {"type": "object", "required": ["circle"], "additionalProperties": False, "properties": {
            "circle": _RATIONAL, "period": {"type": "integer", "minimum": 2}}},
    ]
}

_CLASS_ENTRY = {
    "type": "object",
    "required": ["pattern", "class"],
    "properties": {
        "pattern": _INDEX,
        "class": {"oneOf": [{"type": "array", "items": _COORDINATE}, _COORDINATE]},
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "command", "result"],
    "properties": {
        "schema": {"const": REPORT_SCHEMA_ID},
        "command": {"enum": ["coboundary", "invariants", "resolve", "hjr", "class", "verify"]},
        "result": {"type": "object"},
    },
}


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str) or not re.fullmatch(r"-?\d+(/\d+)?", text):
        raise InputError(f"malformed rational {text!r}: expected a string 'num/den'")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise InputError(f"malformed rational {text!r}: zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass
class Problem:
    rank: int | None = None
    modulus: ModulusData | None = None
    a: ParameterA = field(default_factory=ParameterA)
    b: ParameterB = field(default_factory=ParameterB)
    cochain: PolyCochain | None = None
    options: dict = field(default_factory=dict)
    has_a: bool = False
    has_b: bool = False

    def require_modulus(self) -> ModulusData:
        if self.modulus is None:
            raise InputError("this command needs a 'modulus' section with p and q")
        return self.modulus

    def require_rank(self) -> int:
        if self.rank is None:
            raise InputError("cannot determine the rank: give 'rank' or 'modulus'")
        return self.rank


def _entries(items, what):
    out = {}
    for item in items:
        key = tuple(item["index"])
        if key in out:
            raise InputError(f"duplicate {what} index {list(key)}")
        out[key] = parse_rational(item["value"])
    return out


def _cochain(doc: dict) -> PolyCochain:
    rank, arity = doc["rank"], doc["arity"]
    flavor = doc.get("flavor", "G")
    terms = {}
    for t in doc["terms"]:
        mono = t["monomial"]
        if len(mono) != arity:
            raise InputError(f"monomial {mono} has {len(mono)} slots, expected arity {arity}")
        key = tuple(tuple(sorted(tuple(lab) for lab in slot)) for slot in mono)
        terms[key] = terms.get(key, Fraction(0)) + parse_rational(t["coefficient"])
    try:
        return PolyCochain(rank, arity, flavor, terms)
    except ValueError as exc:
        raise InputError(f"invalid cochain: {exc}") from None


def parse_problem(doc) -> Problem:
    """Validate a decoded problem document and build the library objects."""
    try:
        jsonschema.validate(doc, INPUT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise InputError(f"schema violation at {where}: {exc.message}") from None
    prob = Problem(options=dict(doc.get("options", {})))
    if "modulus" in doc:
        p, q = doc["modulus"]["p"], doc["modulus"]["q"]
        try:
            prob.modulus = ModulusData(tuple(p), tuple(q))
        except ValueError as exc:
            raise InputError(f"invalid modulus: {exc}") from None
    try:
        if "a" in doc:
            prob.a, prob.has_a = ParameterA(_entries(doc["a"], "a")), True
        if "b" in doc:
            prob.b, prob.has_b = ParameterB(_entries(doc["b"], "b")), True
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(f"invalid parameter: {exc}") from None
    if "cochain" in doc:
        prob.cochain = _cochain(doc["cochain"])
    ranks = {r for r in (doc.get("rank"), prob.modulus and prob.modulus.rank) if r}
    if len(ranks) > 1:
        raise InputError(f"'rank' and 'modulus' disagree: {sorted(ranks)}")
    prob.rank = ranks.pop() if ranks else None
    if prob.rank is None and (prob.has_a or prob.has_b):
        prob.rank = max(prob.a.max_index(), prob.b.max_index(), 1)
    for par, name in ((prob.a, "a"), (prob.b, "b")):
        if prob.rank is not None:
            try:
                par.check_rank(prob.rank)
            except ValueError as exc:
                raise InputError(f"parameter {name}: {exc}") from None
    return prob


def load_problem(path: str) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from None
    return parse_problem(doc)


def make_report(command: str, result: dict) -> dict:
    return {"schema": REPORT_SCHEMA_ID, "command": command, "result": result}


def dump_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _class_lists(node):
    """Yield every list of class coordinates in a report."""
    if isinstance(node, dict):
        if "pattern" in node and "class" in node:
            yield node
        for v in node.values():
            yield from _class_lists(v)
    elif isinstance(node, list):
        for v in node:
            yield from _class_lists(v)


def validate_report(report) -> None:
    """Raise InputError unless the report matches the output schema."""
    try:
        jsonschema.validate(report, REPORT_SCHEMA)
        for node in _class_lists(report["result"]):
            jsonschema.validate(node, _CLASS_ENTRY)
    except jsonschema.ValidationError as exc:
        raise InputError(f"report does not match {REPORT_SCHEMA_ID}: {exc.message}") from None

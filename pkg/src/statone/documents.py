"""JSON object documents: schema validation, parsing into objects, and printing back.

Indices are 0-based everywhere and rationals travel as ``"p/q"`` strings.
"""
from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .bauer import BauerObject, CubeOperator, FiniteBauerSimplex
from .certificates import DualityCertificate
from .mv import ProductMvAlgebra, TableMvAlgebra
from .operators import OperatorSpec
from .stone import StoneStatePair


class DocumentError(ValueError):
    """Unreadable, schema-invalid or internally inconsistent document."""


_ints = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_orders = {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1}


def _schema(kind: str, required: list[str], props: dict) -> dict:
    return {
        "type": "object",
        "properties": {"kind": {"const": kind}, **props},
        "required": ["kind", *required],
        "additionalProperties": False,
    }


SCHEMAS = {
    "product": _schema("product", ["chains"], {"chains": _orders, "sigma": _ints}),
    "table": _schema("table", ["oplus", "star", "zero"], {
        "oplus": {"type": "array", "items": _ints, "minItems": 1},
        "star": _ints, "zero": {"type": "integer", "minimum": 0}, "tau": _ints}),
    "stone": _schema("stone", ["points", "g"], {
        "points": {"type": "array", "items": {"type": "string"}, "minItems": 1}, "g": _ints}),
    "bauer": _schema("bauer", ["vertices", "g"], {
        "vertices": {"type": "integer", "minimum": 1}, "g": _ints,
        "labels": {"type": "array", "items": {"type": "string"}}}),
    "cube": _schema("cube", ["dim", "sigma"], {"dim": {"type": "integer", "minimum": 1}, "sigma": _ints}),
    "certificate": _schema("certificate", ["side", "subject", "witness"], {
        "side": {"type": "string"}, "subject": {"type": "object"}, "witness": {"type": "object"},
        "checks": {"type": "object", "additionalProperties": {"type": "integer"}},
        "failures": {"type": "array", "items": {"type": "string"}},
        "completeness": {"type": ["string", "null"]}, "passed": {"type": "boolean"}}),
}


def validate(doc) -> dict:
    if not isinstance(doc, dict) or doc.get("kind") not in SCHEMAS:
        raise DocumentError(f"unknown document kind; expected one of {sorted(SCHEMAS)}")
    try:
        jsonschema.validate(doc, SCHEMAS[doc["kind"]])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "document"
        raise DocumentError(f"{doc['kind']} {where}: {exc.message}") from None
    _check_dimensions(doc)
    return doc


def _check_dimensions(doc: dict) -> None:
    kind = doc["kind"]
    if kind == "product" and "sigma" in doc:
        _indices(doc["sigma"], len(doc["chains"]), "sigma", len(doc["chains"]))
    elif kind == "table":
        m = len(doc["star"])
        if len(doc["oplus"]) != m or any(len(row) != m for row in doc["oplus"]):
            raise DocumentError(f"oplus must be {m}×{m} to match star")
        for row in doc["oplus"]:
            _indices(row, m, "oplus")
        _indices(doc["star"], m, "star")
        if doc["zero"] >= m:
            raise DocumentError(f"zero={doc['zero']} is not an element")
        if "tau" in doc:
            _indices(doc["tau"], m, "tau", m)
    elif kind == "stone":
        _indices(doc["g"], len(doc["points"]), "g", len(doc["points"]))
    elif kind == "bauer":
        _indices(doc["g"], doc["vertices"], "g", doc["vertices"])
        if "labels" in doc and len(doc["labels"]) != doc["vertices"]:
            raise DocumentError("one label per vertex")
    elif kind == "cube":
        _indices(doc["sigma"], doc["dim"], "sigma", doc["dim"])


def _indices(xs, bound: int, name: str, length: int | None = None) -> None:
    if length is not None and len(xs) != length:
        raise DocumentError(f"{name} has {len(xs)} entries, expected {length}")
    bad = [x for x in xs if x >= bound]
    if bad:
        raise DocumentError(f"{name} refers to {bad[0]}, outside 0..{bound - 1}")


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not JSON: {exc}") from None
    return validate(doc)


def load(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    return loads(text)


def dumps(doc: dict) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"


def build(doc: dict):
    """The object a validated document describes.

    Mathematical defects (non-idempotent ``σ``, divisibility) surface here as
    :class:`~statone.errors.InvalidOperatorError`, distinct from document errors.
    """
    kind = doc["kind"]
    if kind == "product":
        if "sigma" in doc:
            return OperatorSpec(doc["chains"], doc["sigma"])
        return ProductMvAlgebra(doc["chains"])
    if kind == "table":
        return TableMvAlgebra(doc["oplus"], doc["star"], doc["zero"]), (tuple(doc["tau"]) if "tau" in doc else None)
    if kind == "stone":
        return StoneStatePair(doc["points"], doc["g"])
    if kind == "bauer":
        labels = tuple(doc["labels"]) if "labels" in doc else None
        return BauerObject(FiniteBauerSimplex(doc["vertices"], labels), tuple(doc["g"]))
    if kind == "cube":
        return CubeOperator(doc["dim"], doc["sigma"])
    return DualityCertificate.from_dict(doc)


def to_document(obj) -> dict:
    if isinstance(obj, OperatorSpec):
        return {"kind": "product", "chains": list(obj.signature.orders), "sigma": list(obj.sigma)}
    if isinstance(obj, ProductMvAlgebra):
        return {"kind": "product", "chains": list(obj.signature.orders)}
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], TableMvAlgebra):
        alg, tau = obj
        doc = {"kind": "table", "oplus": [list(r) for r in alg.oplus], "star": list(alg.star), "zero": alg.zero}
        if tau is not None:
            doc["tau"] = list(tau)
        return doc
    if isinstance(obj, StoneStatePair):
        return {"kind": "stone", "points": list(obj.points), "g": list(obj.g)}
    if isinstance(obj, BauerObject):
        doc = {"kind": "bauer", "vertices": obj.k, "g": list(obj.g)}
        if obj.simplex.labels:
            doc["labels"] = list(obj.simplex.labels)
        return doc
    if isinstance(obj, CubeOperator):
        return {"kind": "cube", "dim": obj.dim, "sigma": list(obj.sigma)}
    if isinstance(obj, DualityCertificate):
        return obj.to_dict()
    raise TypeError(f"no document form for {type(obj).__name__}")


def canonical_stone(pair: StoneStatePair) -> StoneStatePair:
    """Relabel points in sorted label order, so index ``i`` is the ``i``-th smallest label."""
    order = sorted(range(len(pair)), key=lambda x: pair.points[x])
    new_index = {old: new for new, old in enumerate(order)}
    return StoneStatePair(tuple(pair.points[x] for x in order), tuple(new_index[pair.g[x]] for x in order))

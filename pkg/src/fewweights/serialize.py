"""JSON wire formats for problem instances.

Every big integer travels as a decimal string so that values far beyond 64
bits survive any JSON implementation unharmed.  Schema violations raise
:class:`SchemaError`; values that parse but break a type invariant raise
:class:`InvariantError` (from the type constructors), so the two failure
classes stay distinguishable by error code.
"""

from __future__ import annotations

import json
import re

from .core import (
    Encoding,
    Index,
    Item,
    KnapsackInstance,
    Label,
    Quadratization,
    RestrictedSubsetSumInstance,
    SchemaError,
    SubsetSumInstance,
    X3CInstance,
)

__all__ = [
    "knapsack_to_obj",
    "knapsack_from_obj",
    "rss_to_obj",
    "rss_from_obj",
    "x3c_to_obj",
    "x3c_from_obj",
    "subset_sum_to_obj",
    "subset_sum_from_obj",
    "instance_to_obj",
    "instance_from_obj",
    "dump_instance",
    "load_instance",
]

_DECIMAL = re.compile(r"(0|[1-9][0-9]*)\Z")


def _encode_nat(v: int) -> str:
    return str(v)


def _decode_nat(field: str, v) -> int:
    if not isinstance(v, str) or not _DECIMAL.match(v):
        raise SchemaError("schema.decimal", f"{field}: expected decimal string, got {v!r}")
    return int(v)


def _expect(obj, field: str, types):
    if field not in obj:
        raise SchemaError("schema.missing", f"missing field {field!r}")
    v = obj[field]
    if not isinstance(v, types) or isinstance(v, bool):
        raise SchemaError("schema.type", f"{field}: unexpected type {type(v).__name__}")
    return v


def _label_to_obj(label: Label | None):
    if label is None:
        return None
    if isinstance(label, Encoding):
        return {"kind": "encoding", "instance": label.instance, "position": label.position}
    if isinstance(label, Quadratization):
        return {"kind": "quadratization", "bits": list(label.bits), "k": label.k, "l": label.l}
    if isinstance(label, Index):
        return {"kind": "index", "bit": label.bit, "k": label.k}
    raise SchemaError("schema.label", f"unknown label {label!r}")


def _label_from_obj(obj) -> Label | None:
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise SchemaError("schema.label", "label must be an object")
    kind = _expect(obj, "kind", str)
    if kind == "encoding":
        return Encoding(_expect(obj, "instance", int), _expect(obj, "position", int))
    if kind == "quadratization":
        bits = _expect(obj, "bits", list)
        if len(bits) != 2 or any(b not in (0, 1) for b in bits):
            raise SchemaError("schema.label", f"bad quadratization bits {bits!r}")
        return Quadratization((bits[0], bits[1]), _expect(obj, "k", int), _expect(obj, "l", int))
    if kind == "index":
        return Index(_expect(obj, "bit", int), _expect(obj, "k", int))
    raise SchemaError("schema.label", f"unknown label kind {kind!r}")


# ---------------------------------------------------------------------------
# Per-kind converters
# ---------------------------------------------------------------------------

def knapsack_to_obj(inst: KnapsackInstance, strip_labels: bool = False) -> dict:
    items = []
    for it in inst.items:
        entry = {"weight": _encode_nat(it.weight), "profit": _encode_nat(it.profit)}
        if it.label is not None and not strip_labels:
            entry["label"] = _label_to_obj(it.label)
        items.append(entry)
    return {
        "kind": "knapsack",
        "items": items,
        "capacity": _encode_nat(inst.capacity),
        "target": _encode_nat(inst.target),
    }


def knapsack_from_obj(obj) -> KnapsackInstance:
    if not isinstance(obj, dict):
        raise SchemaError("schema.object", "instance must be a JSON object")
    items_obj = _expect(obj, "items", list)
    items = []
    for entry in items_obj:
        if not isinstance(entry, dict):
            raise SchemaError("schema.item", "item must be an object")
        items.append(
            Item(
                _decode_nat("weight", _expect(entry, "weight", str)),
                _decode_nat("profit", _expect(entry, "profit", str)),
                _label_from_obj(entry.get("label")),
            )
        )
    return KnapsackInstance(
        tuple(items),
        _decode_nat("capacity", _expect(obj, "capacity", str)),
        _decode_nat("target", _expect(obj, "target", str)),
    )


def rss_to_obj(inst: RestrictedSubsetSumInstance) -> dict:
    return {
        "kind": "rss",
        "n": inst.n,
        "numbers": [_encode_nat(a) for a in inst.numbers],
    }


def rss_from_obj(obj) -> RestrictedSubsetSumInstance:
    if not isinstance(obj, dict):
        raise SchemaError("schema.object", "instance must be a JSON object")
    n = _expect(obj, "n", int)
    numbers = [_decode_nat("numbers", v) for v in _expect(obj, "numbers", list)]
    return RestrictedSubsetSumInstance(n, tuple(numbers))


def x3c_to_obj(inst: X3CInstance) -> dict:
    return {"kind": "x3c", "n": inst.n, "triples": [list(t) for t in inst.triples]}


def x3c_from_obj(obj) -> X3CInstance:
    if not isinstance(obj, dict):
        raise SchemaError("schema.object", "instance must be a JSON object")
    n = _expect(obj, "n", int)
    triples = []
    for t in _expect(obj, "triples", list):
        if not isinstance(t, list) or len(t) != 3 or not all(
            isinstance(j, int) and not isinstance(j, bool) for j in t
        ):
            raise SchemaError("schema.triple", f"triple must be a list of 3 ints, got {t!r}")
        triples.append(tuple(t))
    return X3CInstance(n, tuple(triples))


def subset_sum_to_obj(inst: SubsetSumInstance) -> dict:
    return {
        "kind": "subsetsum",
        "numbers": [_encode_nat(a) for a in inst.numbers],
        "target": _encode_nat(inst.target),
    }


def subset_sum_from_obj(obj) -> SubsetSumInstance:
    if not isinstance(obj, dict):
        raise SchemaError("schema.object", "instance must be a JSON object")
    numbers = [_decode_nat("numbers", v) for v in _expect(obj, "numbers", list)]
    return SubsetSumInstance(tuple(numbers), _decode_nat("target", _expect(obj, "target", str)))


_TO_OBJ = {
    KnapsackInstance: knapsack_to_obj,
    RestrictedSubsetSumInstance: rss_to_obj,
    X3CInstance: x3c_to_obj,
    SubsetSumInstance: subset_sum_to_obj,
}

_FROM_OBJ = {
    "knapsack": knapsack_from_obj,
    "rss": rss_from_obj,
    "x3c": x3c_from_obj,
    "subsetsum": subset_sum_from_obj,
}


def instance_to_obj(inst, strip_labels: bool = False) -> dict:
    conv = _TO_OBJ.get(type(inst))
    if conv is None:
        raise SchemaError("schema.kind", f"cannot serialize {type(inst).__name__}")
    if conv is knapsack_to_obj:
        return conv(inst, strip_labels)
    return conv(inst)


def instance_from_obj(obj):
    if not isinstance(obj, dict):
        raise SchemaError("schema.object", "instance must be a JSON object")
    kind = _expect(obj, "kind", str)
    conv = _FROM_OBJ.get(kind)
    if conv is None:
        raise SchemaError("schema.kind", f"unknown instance kind {kind!r}")
    return conv(obj)


def dump_instance(inst, path, strip_labels: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_obj(inst, strip_labels=strip_labels), fh, indent=2)
        fh.write("\n")


def load_instance(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError("schema.json", f"{path}: {exc}") from exc
    return instance_from_obj(obj)

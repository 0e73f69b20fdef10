"""Canonical JSON for groups, braces, pre-Lie rings and reports."""
from __future__ import annotations

import hashlib
import json

import numpy as np

from .abelian import AbelianPGroup
from .errors import StructuralError


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def dumps(doc) -> str:
    """Sorted keys, no whitespace variation, trailing newline."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), default=_default) + "\n"


def digest(doc) -> str:
    return hashlib.sha256(dumps(doc).encode()).hexdigest()


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise StructuralError("top-level JSON value must be an object")
    return doc


def group_from_json(doc: dict) -> AbelianPGroup:
    try:
        p = int(doc["prime"])
        exps = [int(e) for e in doc["exponents"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise StructuralError(f"missing or malformed prime/exponents: {exc}") from exc
    return AbelianPGroup(p, exps)


def table_from_json(doc: dict, key: str, A: AbelianPGroup) -> np.ndarray:
    if key not in doc:
        raise StructuralError(f"missing {key!r} table")
    try:
        t = np.array(doc[key], dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise StructuralError(f"{key!r} table is not a rectangular integer array") from exc
    if t.shape != (A.order, A.order):
        raise StructuralError(f"{key!r} table must be {A.order}x{A.order}, got {t.shape}")
    return t


def kind_of(doc: dict) -> str:
    if "star" in doc:
        return "brace"
    if "dot" in doc:
        return "prelie"
    if "table" in doc:
        return "group"
    raise StructuralError("cannot tell the object kind: expected a 'star', 'dot' or 'table' key")

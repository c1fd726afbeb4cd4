"""Algorithm documents: a canonical JSON encoding of :class:`QueryAlgorithm`.

Schema (version 1)::

    {
      "initial": [[re, im], ...],                  # length m
      "m": 4,
      "measurement": [1, 0, 0, 0],
      "metadata": {"name": "...", "notes": "..."},
      "n": 3,
      "schema_version": 1,
      "steps": [
        {"kind": "unitary", "entries": [[[re, im], ...], ...]},   # m x m
        {"kind": "query", "vars": [1, 2, null, 3]}                # 1-based
      ]
    }

Keys are sorted and floats are written with 17 significant digits, so
dumping a loaded document reproduces it byte for byte.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .state import QueryAlgorithm, QueryStep, StructureError, UnitaryStep

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """The document is not a valid algorithm file."""


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def to_document(alg: QueryAlgorithm) -> dict:
    steps = []
    for s in alg.steps:
        if isinstance(s, UnitaryStep):
            steps.append({"kind": "unitary",
                          "entries": [[_complex_pair(z) for z in row] for row in s.matrix]})
        else:
            steps.append({"kind": "query", "vars": list(s.vars)})
    return {
        "schema_version": SCHEMA_VERSION,
        "n": alg.n,
        "m": alg.m,
        "initial": [_complex_pair(z) for z in alg.initial],
        "steps": steps,
        "measurement": list(alg.measurement),
        "metadata": {"name": alg.name, "notes": alg.notes},
    }


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise DocumentError("non-finite number in document")
    x = x + 0.0  # drop negative zero
    return format(x, ".17g")


def _emit(obj: Any) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_emit(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_emit(obj[k])}" for k in sorted(obj)) + "}"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(alg: QueryAlgorithm) -> str:
    """Canonical text: one top-level key per line, one step per line."""
    doc = to_document(alg)
    lines = ["{"]
    keys = sorted(doc)
    for i, k in enumerate(keys):
        comma = "," if i < len(keys) - 1 else ""
        if k == "steps":
            body = ",\n".join("    " + _emit(s) for s in doc[k])
            lines.append(f'  "steps": [\n{body}\n  ]{comma}' if doc[k] else f'  "steps": []{comma}')
        else:
            lines.append(f"  {json.dumps(k)}: {_emit(doc[k])}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _complex_list(v, what):
    try:
        return np.array([complex(float(re), float(im)) for re, im in v], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"{what} must be a list of [re, im] pairs") from exc


def from_document(doc: dict) -> QueryAlgorithm:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {doc.get('schema_version')!r}")
    for key in ("n", "m", "initial", "steps", "measurement"):
        if key not in doc:
            raise DocumentError(f"missing key {key!r}")
    n, m = doc["n"], doc["m"]
    if not isinstance(n, int) or not isinstance(m, int):
        raise DocumentError("n and m must be integers")
    steps = []
    for k, s in enumerate(doc["steps"]):
        kind = s.get("kind") if isinstance(s, dict) else None
        try:
            if kind == "unitary":
                rows = s["entries"]
                mat = np.array([_complex_list(r, f"step {k} row") for r in rows])
                steps.append(UnitaryStep(mat))
            elif kind == "query":
                vs = s["vars"]
                if any(v is not None and (not isinstance(v, int) or isinstance(v, bool))
                       for v in vs):
                    raise DocumentError(f"step {k}: query vars must be ints or null")
                steps.append(QueryStep(tuple(vs)))
            else:
                raise DocumentError(f"step {k}: unknown kind {kind!r}")
        except (KeyError, TypeError) as exc:
            raise DocumentError(f"step {k} is malformed") from exc
        except StructureError as exc:
            raise DocumentError(f"step {k}: {exc}") from exc
    meta = doc.get("metadata") or {}
    try:
        return QueryAlgorithm(n=n, m=m, initial=_complex_list(doc["initial"], "initial"),
                              steps=tuple(steps), measurement=tuple(doc["measurement"]),
                              name=str(meta.get("name", "")), notes=str(meta.get("notes", "")))
    except (StructureError, TypeError, ValueError) as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(str(exc)) from exc


def loads(text: str) -> QueryAlgorithm:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    return from_document(doc)


def save(alg: QueryAlgorithm, path) -> None:
    Path(path).write_text(dumps(alg), encoding="utf-8")


def load(path) -> QueryAlgorithm:
    return loads(Path(path).read_text(encoding="utf-8"))

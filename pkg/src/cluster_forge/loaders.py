"""JSON input and canonical output for matrices, quivers, seeds and representations.

Structural checks go through JSON Schema; domain invariants (antisymmetry,
quiver conditions, matrix shapes) are re-raised as :class:`SchemaError` with
a JSON pointer to the offending field.  ``dumps_*`` produce the canonical
form, and ``dumps(load(dumps(x))) == dumps(x)`` holds byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from .quiver import ExchangeMatrix, IceQuiver, QuiverError, quiver_to_matrix
from .reps import QuiverRep
from .seeds import Seed


class InputError(Exception):
    prefix = "error"

    def __str__(self):
        return f"{self.prefix}: {super().__str__()}"


class InputNotFound(InputError):
    prefix = "file not found"


class MalformedJSON(InputError):
    prefix = "malformed JSON"


class SchemaError(InputError):
    prefix = "schema"

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"


_INT = {"type": "integer"}
_NAT = {"type": "integer", "minimum": 0}

MATRIX_SCHEMA = {
    "type": "object",
    "required": ["n", "r", "rows"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "r": {"type": "integer", "minimum": 1},
        "rows": {"type": "array", "minItems": 1, "items": {"type": "array", "items": _INT}},
    },
    "additionalProperties": False,
}

QUIVER_SCHEMA = {
    "type": "object",
    "required": ["vertices", "arrows"],
    "properties": {
        "vertices": {"type": "integer", "minimum": 1},
        "frozen": {"type": "array", "items": _INT},
        "arrows": {
            "type": "array",
            "items": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2},
        },
    },
    "additionalProperties": False,
}

SEED_SCHEMA = {
    "type": "object",
    "required": ["matrix"],
    "properties": {
        "matrix": {"oneOf": [MATRIX_SCHEMA, QUIVER_SCHEMA]},
        "variables": {"type": "array", "items": {"type": "string", "minLength": 1}},
    },
    "additionalProperties": False,
}

REP_SCHEMA = {
    "type": "object",
    "required": ["quiver", "dim", "arrows"],
    "properties": {
        "quiver": QUIVER_SCHEMA,
        "dim": {"type": "array", "items": _NAT},
        "arrows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to", "matrix"],
                "properties": {
                    "from": _INT,
                    "to": _INT,
                    "matrix": {"type": "array", "items": {"type": "array", "items": _INT}},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}


def _pointer(parts) -> str:
    return "".join(f"/{p}" for p in parts)


def _validate(obj: Any, schema: dict, base: str):
    validator = jsonschema.Draft202012Validator(schema)
    error = jsonschema.exceptions.best_match(validator.iter_errors(obj))
    if error is not None:
        raise SchemaError(base + _pointer(error.absolute_path), error.message)


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except FileNotFoundError:
        raise InputNotFound(str(path)) from None
    except IsADirectoryError:
        raise InputNotFound(f"{path} is a directory") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJSON(f"{path}: {exc}") from None


# -- parsing -----------------------------------------------------------------------


def parse_matrix(obj: Any, base: str = "") -> ExchangeMatrix:
    _validate(obj, MATRIX_SCHEMA, base)
    rows, n, r = obj["rows"], obj["n"], obj["r"]
    if len(rows) != n:
        raise SchemaError(base + "/rows", f"expected {n} rows, got {len(rows)}")
    if r > n:
        raise SchemaError(base + "/r", f"r={r} exceeds n={n}")
    for i, row in enumerate(rows):
        if len(row) != r:
            raise SchemaError(f"{base}/rows/{i}", f"expected {r} entries, got {len(row)}")
    for i in range(r):
        for j in range(i, r):
            if rows[i][j] != -rows[j][i]:
                raise SchemaError(
                    f"{base}/rows/{i}/{j}",
                    f"principal part not antisymmetric: b[{i + 1}][{j + 1}]={rows[i][j]}, b[{j + 1}][{i + 1}]={rows[j][i]}",
                )
    return ExchangeMatrix.from_rows(rows, r)


def parse_quiver(obj: Any, base: str = "") -> IceQuiver:
    _validate(obj, QUIVER_SCHEMA, base)
    try:
        return IceQuiver(obj["vertices"], tuple(tuple(a) for a in obj["arrows"]), frozenset(obj.get("frozen", ())))
    except QuiverError as exc:
        raise SchemaError(base + "/arrows", str(exc)) from None


def _matrix_or_quiver(obj: Any, base: str) -> ExchangeMatrix:
    if isinstance(obj, dict) and "vertices" in obj:
        q = parse_quiver(obj, base)
        try:
            return quiver_to_matrix(q)
        except QuiverError as exc:
            raise SchemaError(base + "/frozen", str(exc)) from None
    return parse_matrix(obj, base)


def parse_seed(obj: Any) -> Seed:
    """Seed from ``{"matrix": ..., "variables": [...]}`` or a bare matrix or quiver."""
    if isinstance(obj, dict) and "matrix" in obj:
        _validate(obj, SEED_SCHEMA, "")
        b = _matrix_or_quiver(obj["matrix"], "/matrix")
        names = obj.get("variables")
        if names is not None:
            if len(names) != b.n:
                raise SchemaError("/variables", f"expected {b.n} names, got {len(names)}")
            if len(set(names)) != len(names):
                raise SchemaError("/variables", "variable names must be distinct")
        return Seed.initial(b, names)
    return Seed.initial(_matrix_or_quiver(obj, ""))


def parse_rep(obj: Any) -> QuiverRep:
    _validate(obj, REP_SCHEMA, "")
    q = parse_quiver(obj["quiver"], "/quiver")
    if q.frozen:
        raise SchemaError("/quiver/frozen", "representations need a quiver without frozen vertices")
    dim = obj["dim"]
    if len(dim) != q.vertices:
        raise SchemaError("/dim", f"expected {q.vertices} entries, got {len(dim)}")
    maps = []
    for k, a in enumerate(obj["arrows"]):
        s, t, m = a["from"], a["to"], a["matrix"]
        if not (1 <= s <= q.vertices and 1 <= t <= q.vertices):
            raise SchemaError(f"/arrows/{k}", f"arrow {s}->{t} has an endpoint out of range")
        if len(m) != dim[t - 1] or any(len(row) != dim[s - 1] for row in m):
            raise SchemaError(f"/arrows/{k}/matrix", f"expected shape {dim[t - 1]}x{dim[s - 1]}")
        maps.append((s, t, m))
    try:
        return QuiverRep(q, tuple(dim), tuple(maps))
    except (ValueError, QuiverError) as exc:
        raise SchemaError("/arrows", str(exc)) from None


def load_seed(path: str | Path) -> Seed:
    return parse_seed(read_json(path))


def load_rep(path: str | Path) -> QuiverRep:
    return parse_rep(read_json(path))


def load_inputs(path: str | Path) -> Seed | QuiverRep:
    obj = read_json(path)
    if isinstance(obj, dict) and "dim" in obj:
        return parse_rep(obj)
    return parse_seed(obj)


# -- canonical output --------------------------------------------------------------


def seed_to_json(seed: Seed) -> dict:
    out: dict = {"matrix": seed.matrix.to_json()}
    if seed.names is not None:
        out["variables"] = list(seed.names)
    return out


def dumps(value: ExchangeMatrix | IceQuiver | Seed | QuiverRep) -> str:
    obj = seed_to_json(value) if isinstance(value, Seed) else value.to_json()
    return json.dumps(obj, separators=(", ", ": "))

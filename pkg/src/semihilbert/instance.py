"""JSON instance files.

Complex entries are ``[re, im]`` pairs; a bare real number is accepted as
shorthand for ``[x, 0]`` and written back as a pair::

    {"dim": 2,
     "A": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]],
     "operators": {"T": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]},
     "tolerances": {"psd_tol": 1e-10},
     "seed": 7}
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import SemiHilbertError
from .space import SemiInnerSpace, validate_positive

TOLERANCE_KEYS = ("psd_tol", "rank_tol")
_KEYS = {"dim", "A", "operators", "tolerances", "seed"}


class ParseError(SemiHilbertError, ValueError):
    """The instance file is malformed."""


@dataclass
class Instance:
    dim: int
    A: np.ndarray
    operators: dict[str, np.ndarray]
    tolerances: dict[str, float] = field(default_factory=dict)
    seed: int | None = None

    def space(self) -> SemiInnerSpace:
        return validate_positive(self.A, **self.tolerances)

    def operator(self, name: str) -> np.ndarray:
        try:
            return self.operators[name]
        except KeyError:
            raise ParseError(f"no operator named {name!r} (have: {', '.join(self.operators) or 'none'})") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.dim == other.dim
            and np.array_equal(self.A, other.A)
            and self.operators.keys() == other.operators.keys()
            and all(np.array_equal(v, other.operators[k]) for k, v in self.operators.items())
            and self.tolerances == other.tolerances
            and self.seed == other.seed
        )


def _entry(v, where: str) -> complex:
    if isinstance(v, bool):
        raise ParseError(f"{where}: boolean is not a number")
    if isinstance(v, (int, float)):
        re, im = v, 0.0
    elif isinstance(v, list) and len(v) == 2 and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in v):
        re, im = v
    else:
        raise ParseError(f"{where}: expected [re, im] pair, got {v!r}")
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ParseError(f"{where}: non-finite entry")
    return complex(float(re), float(im))


def _matrix(raw, dim: int, name: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != dim:
        raise ParseError(f"{name}: expected {dim} rows")
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"{name}: row {i} is ragged (expected {dim} entries)")
        for j, v in enumerate(row):
            out[i, j] = _entry(v, f"{name}[{i}][{j}]")
    return out


def from_dict(doc) -> Instance:
    if not isinstance(doc, dict):
        raise ParseError("instance must be a JSON object")
    extra = set(doc) - _KEYS
    if extra:
        raise ParseError(f"unknown keys: {sorted(extra)}")
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ParseError("dim must be a positive integer")
    if "A" not in doc:
        raise ParseError("missing kernel A")
    A = _matrix(doc["A"], dim, "A")
    ops_raw = doc.get("operators", {})
    if not isinstance(ops_raw, dict):
        raise ParseError("operators must be an object")
    ops = {str(k): _matrix(v, dim, f"operators.{k}") for k, v in ops_raw.items()}
    tol_raw = doc.get("tolerances", {})
    if not isinstance(tol_raw, dict) or set(tol_raw) - set(TOLERANCE_KEYS):
        raise ParseError(f"tolerances may only contain {TOLERANCE_KEYS}")
    tols = {}
    for k, v in tol_raw.items():
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not (0 < v < 1):
            raise ParseError(f"tolerance {k} must be in (0, 1)")
        tols[k] = float(v)
    seed = doc.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise ParseError("seed must be an integer")
    return Instance(dim, A, ops, tols, seed)


def parse(text: str) -> Instance:
    try:
        doc = json.loads(text, parse_constant=lambda c: (_ for _ in ()).throw(ParseError(f"non-finite literal {c}")))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return from_dict(doc)


def load(path: str) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def matrix_to_json(M: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M, dtype=np.complex128)]


def to_dict(inst: Instance) -> dict:
    doc = {"dim": inst.dim, "A": matrix_to_json(inst.A), "operators": {k: matrix_to_json(v) for k, v in inst.operators.items()}}
    if inst.tolerances:
        doc["tolerances"] = dict(inst.tolerances)
    if inst.seed is not None:
        doc["seed"] = inst.seed
    return doc


def dumps(inst: Instance) -> str:
    return json.dumps(to_dict(inst), indent=1) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    tmp = f"{path}.tmp{os.getpid()}"
    try:
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def save(path: str, inst: Instance) -> None:
    write_atomic(path, dumps(inst))

"""JSON encodings of matrices, states, codes, channels and reports.

Matrix entries are ``[re, im]`` pairs of doubles, row-major::

    state:   {"dim": d, "matrix": [[[re, im], ...], ...]}
    code:    {"ambient_dim": n, "logical_dim": k, "isometry": <n x k matrix>}
    channel: {"in_dim": d, "out_dim": m, "kraus": [<m x d matrix>, ...]}
         or  {"in_dim": d, "out_dim": m, "choi": <dm x dm matrix>}

Exactly one of ``kraus`` / ``choi`` may be present.  With ``choi`` the
dimension keys may be omitted when input and output dimensions are equal.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .channel import QuantumChannel, from_choi, from_kraus
from .errors import DimensionMismatch, ParseError, QrevError
from .qstate import CodeSubspace, DensityOperator

__all__ = [
    "encode_matrix",
    "decode_matrix",
    "state_to_json",
    "state_from_json",
    "code_to_json",
    "code_from_json",
    "channel_to_json",
    "channel_from_json",
    "load_json",
    "load_state",
    "load_code",
    "load_channel",
    "detect_kind",
]


def encode_matrix(m) -> list:
    a = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def _entry(z, where: str) -> complex:
    if (
        not isinstance(z, (list, tuple))
        or len(z) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in z)
    ):
        raise ParseError(f"{where}: expected a [re, im] pair of numbers, got {z!r}")
    return complex(z[0], z[1])


def decode_matrix(obj, key: str = "matrix") -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"'{key}': expected a non-empty list of rows")
    rows = []
    width = None
    for i, row in enumerate(obj):
        if not isinstance(row, list):
            raise ParseError(f"'{key}'[{i}]: expected a list of [re, im] entries")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"'{key}'[{i}]: row has {len(row)} entries, expected {width}")
        rows.append([_entry(z, f"'{key}'[{i}][{j}]") for j, z in enumerate(row)])
    return np.array(rows, dtype=complex)


def _int_key(doc: dict, key: str) -> int:
    if key not in doc:
        raise ParseError(f"missing key '{key}'")
    val = doc[key]
    if not isinstance(val, int) or isinstance(val, bool) or val < 1:
        raise ParseError(f"'{key}': expected a positive integer, got {val!r}")
    return val


def _object(doc) -> dict:
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    return doc


def state_to_json(rho: DensityOperator) -> dict:
    return {"dim": rho.dim, "matrix": encode_matrix(rho.matrix)}


def state_from_json(doc) -> DensityOperator:
    doc = _object(doc)
    dim = _int_key(doc, "dim")
    if "matrix" not in doc:
        raise ParseError("missing key 'matrix'")
    m = decode_matrix(doc["matrix"], "matrix")
    if m.shape != (dim, dim):
        raise DimensionMismatch(f"'matrix' has shape {m.shape}, 'dim' says {dim}")
    return DensityOperator(m)


def code_to_json(code: CodeSubspace) -> dict:
    return {
        "ambient_dim": code.ambient_dim,
        "logical_dim": code.logical_dim,
        "isometry": encode_matrix(code.isometry),
    }


def code_from_json(doc) -> CodeSubspace:
    doc = _object(doc)
    n = _int_key(doc, "ambient_dim")
    k = _int_key(doc, "logical_dim")
    if "isometry" not in doc:
        raise ParseError("missing key 'isometry'")
    v = decode_matrix(doc["isometry"], "isometry")
    if v.shape != (n, k):
        raise DimensionMismatch(f"'isometry' has shape {v.shape}, expected ({n}, {k})")
    return CodeSubspace(v)


def channel_to_json(ch: QuantumChannel, form: str = "kraus", kraus=None) -> dict:
    doc = {"in_dim": ch.in_dim, "out_dim": ch.out_dim}
    if form == "kraus":
        doc["kraus"] = [encode_matrix(e) for e in (ch.kraus if kraus is None else kraus)]
    elif form == "choi":
        doc["choi"] = encode_matrix(ch.choi)
    else:
        raise ValueError(f"unknown channel form {form!r}")
    return doc


def channel_from_json(doc) -> QuantumChannel:
    doc = _object(doc)
    has_kraus, has_choi = "kraus" in doc, "choi" in doc
    if has_kraus == has_choi:
        raise ParseError("channel must have exactly one of the keys 'kraus' or 'choi'")
    if has_kraus:
        d = _int_key(doc, "in_dim")
        m = _int_key(doc, "out_dim")
        ops = doc["kraus"]
        if not isinstance(ops, list) or not ops:
            raise ParseError("'kraus': expected a non-empty list of matrices")
        mats = [decode_matrix(e, f"kraus[{i}]") for i, e in enumerate(ops)]
        for i, e in enumerate(mats):
            if e.shape != (m, d):
                raise DimensionMismatch(f"kraus[{i}] has shape {e.shape}, expected ({m}, {d})")
        return from_kraus(mats)
    choi = decode_matrix(doc["choi"], "choi")
    n = choi.shape[0]
    if "in_dim" in doc or "out_dim" in doc:
        d = _int_key(doc, "in_dim")
        m = _int_key(doc, "out_dim")
    else:
        d = math.isqrt(n)
        if d * d != n:
            raise ParseError("'choi' without 'in_dim'/'out_dim' must have square dimension d*d")
        m = d
    if choi.shape != (d * m, d * m):
        raise DimensionMismatch(f"'choi' has shape {choi.shape}, expected ({d * m}, {d * m})")
    return from_choi(choi, d, m)


def load_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def detect_kind(doc) -> str:
    doc = _object(doc)
    if "kraus" in doc or "choi" in doc:
        return "channel"
    if "isometry" in doc:
        return "code"
    if "matrix" in doc:
        return "state"
    raise ParseError("cannot tell whether the document is a state, code or channel")


def _load(path, parse):
    doc = load_json(path)
    try:
        return parse(doc)
    except QrevError as exc:
        exc.args = (f"{path}: {exc}",) + exc.args[1:]
        raise


def load_state(path) -> DensityOperator:
    return _load(path, state_from_json)


def load_code(path) -> CodeSubspace:
    return _load(path, code_from_json)


def load_channel(path) -> QuantumChannel:
    return _load(path, channel_from_json)

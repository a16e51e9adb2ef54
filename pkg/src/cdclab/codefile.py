"""Bit-exact JSON code files.

Canonical emission (sorted keys, sorted codewords, no whitespace
variance, decimal integers) makes files diffable and round-trips the
identity byte for byte.  Loading re-validates that every codeword matrix
is in reduced echelon form with full rank.
"""

from __future__ import annotations

import json

from .gf import field_make
from .matrix import matrix_from_rows, rref
from .subspace import Code, Subspace, subspace_from_rref

FORMAT_VERSION = 1


def code_to_obj(code: Code) -> dict:
    words = []
    for u in code.ordered():
        words.append([list(u.mat.row(i)) for i in range(u.dim)])
    obj = {
        "format": FORMAT_VERSION,
        "field": {"p": code.field.p, "e": code.field.e, "modulus": list(code.field.modulus)},
        "v": code.v,
        "k": code.k,
        "d": code.d,
        "provenance": code.provenance,
        "verified": code.verified,
        "codewords": words,
    }
    if code.bq_v2 is not None:
        obj["bq"] = {"v2": code.bq_v2}
    return obj


def emit(code: Code) -> str:
    return json.dumps(code_to_obj(code), sort_keys=True, separators=(",", ":")) + "\n"


def save_code(code: Code, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(code))


def code_from_obj(obj: dict) -> Code:
    if obj.get("format") != FORMAT_VERSION:
        raise ValueError(f"unsupported format version {obj.get('format')!r}")
    f = obj["field"]
    field = field_make(f["p"], f["e"], tuple(f["modulus"]))
    v, k, d = obj["v"], obj["k"], obj["d"]
    words = []
    for rows in obj["codewords"]:
        m = matrix_from_rows(field, rows, v)
        red, _ = rref(m)
        if red.rows != k or red.entries != m.entries:
            raise ValueError("codeword matrix is not full-rank rref")
        words.append(subspace_from_rref(m))
    bq_v2 = obj.get("bq", {}).get("v2") if "bq" in obj else None
    code = Code(
        field,
        v,
        k,
        d,
        frozenset(words),
        obj.get("provenance", "file"),
        verified=bool(obj.get("verified", False)),
        bq_v2=bq_v2,
    )
    if code.size != len(obj["codewords"]):
        raise ValueError("duplicate codewords in file")
    return code


def parse(text: str) -> Code:
    return code_from_obj(json.loads(text))


def load_code(path: str) -> Code:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())

"""JSON payloads for masks, vector sequences and spectral systems.

Rationals are stored as ``"p/q"`` strings. Unknown keys are rejected.
Serialization is deterministic so identical inputs give identical bytes.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

from .algebra import Poly, format_rational, parse_rational
from .errors import FormatError
from .spectral import SpectralSystem
from .subdivision import Mask, VecSeq


def _check_keys(obj, required: tuple[str, ...], what: str) -> None:
    if not isinstance(obj, dict):
        raise FormatError(f"{what}: expected a JSON object")
    extra = set(obj) - set(required)
    if extra:
        raise FormatError(f"{what}: unknown keys {sorted(extra)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise FormatError(f"{what}: missing keys {missing}")
    for k in required:
        if k in ("d", "offset", "order") and (not isinstance(obj[k], int) or isinstance(obj[k], bool)):
            raise FormatError(f"{what}: {k!r} must be an integer")


def _rationals(items, what: str):
    if not isinstance(items, list):
        raise FormatError(f"{what}: expected a list")
    return [parse_rational(x) for x in items]


def mask_from_dict(obj) -> Mask:
    _check_keys(obj, ("d", "offset", "matrices"), "mask")
    d = obj["d"]
    if d < 1:
        raise FormatError("mask: d must be >= 1")
    mats = []
    if not isinstance(obj["matrices"], list):
        raise FormatError("mask: matrices must be a list")
    for m in obj["matrices"]:
        if not isinstance(m, list) or len(m) != d + 1:
            raise FormatError(f"mask: each matrix needs {d + 1} rows")
        rows = [_rationals(r, "mask row") for r in m]
        if any(len(r) != d + 1 for r in rows):
            raise FormatError(f"mask: each row needs {d + 1} entries")
        mats.append(rows)
    return Mask(d, obj["offset"], mats)


def mask_to_dict(mask: Mask) -> dict:
    return {
        "d": mask.d,
        "offset": mask.offset,
        "matrices": [[[format_rational(x) for x in row] for row in m] for m in mask.matrices],
    }


def seq_from_dict(obj) -> VecSeq:
    _check_keys(obj, ("d", "offset", "vectors"), "sequence")
    d = obj["d"]
    if d < 1:
        raise FormatError("sequence: d must be >= 1")
    if not isinstance(obj["vectors"], list):
        raise FormatError("sequence: vectors must be a list")
    vecs = [_rationals(v, "sequence vector") for v in obj["vectors"]]
    if any(len(v) != d + 1 for v in vecs):
        raise FormatError(f"sequence: each vector needs {d + 1} entries")
    return VecSeq(d, obj["offset"], vecs)


def seq_to_dict(seq: VecSeq) -> dict:
    return {
        "d": seq.d,
        "offset": seq.offset,
        "vectors": [[format_rational(x) for x in v] for v in seq.vectors],
    }


def system_from_dict(obj) -> SpectralSystem:
    _check_keys(obj, ("d", "order", "polys"), "spectral system")
    if not isinstance(obj["polys"], list) or len(obj["polys"]) != obj["order"] + 1:
        raise FormatError("spectral system: need order + 1 polynomials")
    polys = tuple(Poly(_rationals(p, "polynomial")) for p in obj["polys"])
    try:
        return SpectralSystem(obj["d"], polys)
    except ValueError as exc:
        raise FormatError(f"spectral system: {exc}") from None


def system_to_dict(system: SpectralSystem) -> dict:
    return {
        "d": system.d,
        "order": system.order,
        "polys": [[format_rational(c) for c in p.coeffs] for p in system.polys],
    }


_INNER = re.compile(r'\[\s*((?:"[^"]*",\s*)*"[^"]*")\s*\]')


def dumps(obj: dict) -> str:
    """Indented JSON with innermost rational lists kept on one line."""
    text = json.dumps(obj, indent=1, ensure_ascii=False)
    text = _INNER.sub(lambda m: "[" + ", ".join(re.findall(r'"[^"]*"', m.group(1))) + "]", text)
    return text + "\n"


def read_json(path: str | Path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from None


def write_json(path: str | Path, obj: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def load_mask(path) -> Mask:
    return mask_from_dict(read_json(path))


def load_seq(path) -> VecSeq:
    return seq_from_dict(read_json(path))


def load_system(path) -> SpectralSystem:
    return system_from_dict(read_json(path))

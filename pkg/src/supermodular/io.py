"""JSON interchange: category files and report files.

Exact values only: integers, rationals written as strings ("3/4"), cyclotomic
entries as {conductor, coeffs} and algebraic reals as {minpoly, interval}.
Any floating-point literal in a category file is rejected at parse time.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import AlgebraicReal, CyclotomicElement, cyc, make_algebraic
from .errors import ParseError, SchemaVersionMismatch, ShapeMismatch
from .fusion_ring import FusionRing
from .premodular import PremodularData

SCHEMA_VERSION = 1
REPORT_SCHEMA_VERSION = 1


def _reject_float(text: str):
    raise ParseError(f"floating-point literal {text!r} is not allowed; write exact values")


def _algebraic_to_json(x: AlgebraicReal) -> dict:
    lo, hi = x.interval
    return {"minpoly": [int(c) for c in x.minpoly], "interval": [str(lo), str(hi)]}


def _algebraic_from_json(obj: dict) -> AlgebraicReal:
    lo, hi = (Fraction(v) for v in obj["interval"])
    return make_algebraic([int(c) for c in obj["minpoly"]], (lo, hi))


@dataclass
class CategoryFile:
    name: str
    ring: FusionRing
    stilde: tuple | None = None
    twists: tuple[Fraction, ...] | None = None
    dimensions: tuple[AlgebraicReal, ...] | None = None
    metadata: dict = field(default_factory=dict)

    @classmethod
    def from_data(cls, data: PremodularData, metadata: dict | None = None,
                  with_dimensions: bool = True) -> "CategoryFile":
        dims = None
        if with_dimensions and all(data.dim(i).is_real() for i in range(data.rank)):
            dims = tuple(data.dim(i).to_algebraic_real() for i in range(data.rank))
        return cls(data.name or data.ring.name, data.ring, data.stilde, data.twists, dims,
                   dict(metadata if metadata is not None else data.metadata))

    @classmethod
    def from_ring(cls, ring: FusionRing, metadata: dict | None = None) -> "CategoryFile":
        return cls(ring.name, ring, metadata=dict(metadata or {}))

    def data(self) -> PremodularData | None:
        if self.stilde is None:
            return None
        return PremodularData(self.ring, self.stilde, self.twists, self.name, dict(self.metadata))

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "rank": self.ring.rank,
            "labels": list(self.ring.labels),
            "fusion": self.ring.tensor.tolist(),
            "dual": list(self.ring.dual),
            "metadata": self.metadata,
        }
        if self.stilde is not None:
            out["stilde"] = [[cyc(e).to_json() for e in row] for row in self.stilde]
        if self.twists is not None:
            out["twists"] = [[t.numerator, t.denominator] for t in self.twists]
        if self.dimensions is not None:
            out["dimensions"] = [_algebraic_to_json(d) for d in self.dimensions]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CategoryFile":
        if not isinstance(obj, dict):
            raise ParseError("category file must be a JSON object")
        ver = obj.get("schema_version")
        if ver != SCHEMA_VERSION:
            raise SchemaVersionMismatch(f"schema_version {ver!r}, expected {SCHEMA_VERSION}")
        try:
            rank = int(obj["rank"])
            tensor = np.array(obj["fusion"], dtype=np.int64)
            if tensor.shape != (rank, rank, rank):
                raise ParseError(f"fusion tensor has shape {tensor.shape}, expected {(rank,) * 3}")
            labels = tuple(obj.get("labels") or [str(i) for i in range(rank)])
            ring = FusionRing(tensor, tuple(int(v) for v in obj["dual"]), labels, obj.get("name", ""))
            stilde = None
            if obj.get("stilde") is not None:
                stilde = tuple(tuple(CyclotomicElement.from_json(e) for e in row) for row in obj["stilde"])
                if len(stilde) != rank or any(len(row) != rank for row in stilde):
                    raise ParseError(f"stilde must be {rank}x{rank}")
            twists = None
            if obj.get("twists") is not None:
                twists = tuple(Fraction(int(n), int(d)) for n, d in obj["twists"])
                if len(twists) != rank:
                    raise ParseError(f"{len(twists)} twists for rank {rank}")
            dims = None
            if obj.get("dimensions") is not None:
                dims = tuple(_algebraic_from_json(d) for d in obj["dimensions"])
            return cls(obj.get("name", ""), ring, stilde, twists, dims, dict(obj.get("metadata") or {}))
        except (KeyError, TypeError, ValueError, ShapeMismatch, ZeroDivisionError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed category file: {exc!r}") from exc


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def serialize(cf: CategoryFile) -> str:
    return dumps(cf.to_json())


def parse(text: str) -> CategoryFile:
    try:
        obj = json.loads(text, parse_float=_reject_float,
                         parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return CategoryFile.from_json(obj)


def read_category(path: str | Path) -> CategoryFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse(text)


def write_category(cf: CategoryFile, path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(serialize(cf))
    return p


def safe_filename(name: str) -> str:
    keep = []
    for ch in name:
        if ch.isalnum() or ch in "-_":
            keep.append(ch)
        elif ch in " ^=":
            keep.append("_")
    out = "".join(keep).strip("_")
    while "__" in out:
        out = out.replace("__", "_")
    return out or "category"


def make_report(command: list[str], verdicts: dict, certificates: dict | None = None,
                external_facts: list[str] | None = None, timing: float | None = None,
                annotations: dict | None = None) -> dict:
    out = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "command": list(command),
        "verdicts": verdicts,
        "certificates": certificates or {},
        "external_facts": sorted(set(external_facts or [])),
        "timing": {"seconds": None if timing is None else round(timing, 3)},
    }
    if annotations:
        out["annotations"] = annotations
    return out

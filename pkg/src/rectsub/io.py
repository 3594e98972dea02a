"""Text formats: ``.segs`` segment files and JSON documents.

A ``.segs`` file holds one segment per line as four integers ``x1 y1 x2 y2``;
``#`` starts a comment. JSON documents are written with a fixed key order and
two-space indentation so that serialising a parsed document reproduces it.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any

from .geometry import (
    GeometryError,
    NonAxisParallel,
    Point,
    Segment,
    SegmentSet,
    ZeroLengthSegment,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class SegmentParseError(ParseError):
    pass


class NonAxisParallelLine(SegmentParseError, NonAxisParallel):
    pass


class ZeroLengthLine(SegmentParseError, ZeroLengthSegment):
    pass


def parse_segments(text: str) -> SegmentSet:
    segs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 4:
            raise SegmentParseError(f"expected 4 integers, got {len(parts)}", lineno)
        try:
            coords = [int(p) for p in parts]
        except ValueError:
            raise SegmentParseError(f"non-integer coordinate in {body!r}", lineno) from None
        try:
            segs.append(Segment.of(*coords))
        except NonAxisParallel as e:
            raise NonAxisParallelLine(str(e), lineno) from None
        except ZeroLengthSegment as e:
            raise ZeroLengthLine(str(e), lineno) from None
    return SegmentSet.of(segs)


def serialize_segments(segs: SegmentSet, header: str | None = None) -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    lines += [" ".join(map(str, s.as_tuple())) for s in segs]
    return "\n".join(lines) + "\n"


def instance_hash(segs: SegmentSet) -> str:
    body = serialize_segments(segs)
    return "sha256:" + hashlib.sha256(body.encode()).hexdigest()


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


@dataclass
class SolutionDocument:
    problem: str
    variant: str
    size: int
    points: list[tuple[int, int]] | None
    face_ids: list[int] | None
    optimal: bool
    algorithm: str
    instance_hash: str

    def to_json(self) -> dict:
        doc: dict[str, Any] = {
            "problem": self.problem,
            "variant": self.variant,
            "size": self.size,
        }
        if self.points is not None:
            doc["points"] = [[int(x), int(y)] for x, y in self.points]
        if self.face_ids is not None:
            doc["face_ids"] = [int(f) for f in self.face_ids]
        doc["optimal"] = self.optimal
        doc["algorithm"] = self.algorithm
        doc["instance_hash"] = self.instance_hash
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "SolutionDocument":
        _require(doc, "", ["problem", "variant", "size", "optimal", "algorithm", "instance_hash"])
        if doc["problem"] not in ("stab", "mis", "mds"):
            raise SchemaError("problem", f"unknown problem {doc['problem']!r}")
        points = face_ids = None
        if doc["problem"] == "stab":
            _require(doc, "", ["points"])
            points = [_point(p, f"points[{k}]") for k, p in enumerate(doc["points"])]
        else:
            _require(doc, "", ["face_ids"])
            face_ids = [_int(f, f"face_ids[{k}]") for k, f in enumerate(doc["face_ids"])]
        return cls(
            problem=doc["problem"],
            variant=doc["variant"],
            size=_int(doc["size"], "size"),
            points=points,
            face_ids=face_ids,
            optimal=bool(doc["optimal"]),
            algorithm=str(doc["algorithm"]),
            instance_hash=str(doc["instance_hash"]),
        )


def solution_document(solution, problem: str, variant: str, segs: SegmentSet) -> SolutionDocument:
    is_stab = problem == "stab"
    return SolutionDocument(
        problem=problem,
        variant=variant,
        size=solution.size,
        points=[tuple(p) for p in solution.points] if is_stab else None,
        face_ids=sorted(solution.face_ids) if not is_stab else None,
        optimal=solution.optimal,
        algorithm=solution.algorithm,
        instance_hash=instance_hash(segs),
    )


def _require(doc, path, keys):
    if not isinstance(doc, dict):
        raise SchemaError(path or "$", "expected an object")
    for k in keys:
        if k not in doc:
            raise SchemaError(f"{path}.{k}" if path else k, "missing required field")


def _int(v, path) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(path, f"expected an integer, got {v!r}")
    return v


def _point(v, path) -> Point:
    if not isinstance(v, list) or len(v) != 2:
        raise SchemaError(path, "expected [x, y]")
    return Point(_int(v[0], path + "[0]"), _int(v[1], path + "[1]"))


__all__ = [
    "GeometryError",
    "ParseError",
    "SchemaError",
    "SolutionDocument",
    "dumps",
    "instance_hash",
    "parse_segments",
    "serialize_segments",
    "solution_document",
]

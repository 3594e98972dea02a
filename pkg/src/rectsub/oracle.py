"""Independent point-location checks for a built subdivision.

These recompute face membership from the original segments and are used by
the test-suite and the acceptance gate to cross-check the flood fill.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .geometry import Point, Subdivision


def _covered(segments, a: Point, b: Point) -> bool:
    """True if the unit piece ``a``-``b`` lies on some input segment."""
    return any(s.covers(a) and s.covers(b) for s in segments)


def _crossings(px2: int, py2: int, edges) -> int:
    """Even-odd count of boundary edges crossed by a ray going right from ``p``.

    Coordinates of ``p`` are doubled so cell centres stay integral.
    """
    n = 0
    for a, b in edges:
        if a.x != b.x:
            continue
        x2 = 2 * a.x
        lo, hi = sorted((2 * a.y, 2 * b.y))
        if x2 > px2 and lo < py2 < hi:
            n += 1
    return n


@dataclass
class LocationReport:
    sampled: int = 0
    mismatches: list = field(default_factory=list)
    uncovered_boundary: list = field(default_factory=list)
    split_open_borders: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.mismatches or self.uncovered_boundary or self.split_open_borders)


def check_point_location(sub: Subdivision, samples: int = 1000, seed: int = 0) -> LocationReport:
    """Compare flood-fill labels against ray casting on face boundaries.

    Every face boundary edge must lie on an input segment, every unit border
    not on an input segment must join cells of the same region, and a ray cast
    from each sampled cell centre must land inside exactly its labelled face.
    """
    rep = LocationReport()
    segs = sub.segments.segments
    boundaries = []
    for f in range(sub.n_faces):
        edges = sub.face_boundary_edges(f)
        for a, b in edges:
            if not _covered(segs, a, b):
                rep.uncovered_boundary.append((f, a, b))
        boundaries.append(edges)

    w, h = sub.cell_face.shape
    xs, ys = sub.xs, sub.ys
    for i in range(w):
        for j in range(h):
            if i + 1 < w:
                a, b = Point(xs[i + 1], ys[j]), Point(xs[i + 1], ys[j + 1])
                if not _covered(segs, a, b) and sub.cell_face[i, j] != sub.cell_face[i + 1, j]:
                    rep.split_open_borders.append(((i, j), (i + 1, j)))
            if j + 1 < h:
                a, b = Point(xs[i], ys[j + 1]), Point(xs[i + 1], ys[j + 1])
                if not _covered(segs, a, b) and sub.cell_face[i, j] != sub.cell_face[i, j + 1]:
                    rep.split_open_borders.append(((i, j), (i, j + 1)))

    cells = [(i, j) for i in range(w) for j in range(h)]
    if len(cells) > samples:
        cells = random.Random(seed).sample(cells, samples)
    for i, j in cells:
        px2, py2 = xs[i] + xs[i + 1], ys[j] + ys[j + 1]
        inside = [f for f, edges in enumerate(boundaries) if _crossings(px2, py2, edges) % 2]
        expected = int(sub.cell_face[i, j])
        got = inside[0] if len(inside) == 1 else (-1 if not inside else None)
        if got != expected:
            rep.mismatches.append(((i, j), expected, inside))
    rep.sampled = len(cells)
    return rep

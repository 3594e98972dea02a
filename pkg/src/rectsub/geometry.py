"""Planar subdivisions induced by axis-parallel integer segments.

The plane is cut along every x and y coordinate used by a segment endpoint.
Each resulting grid cell is either inside exactly one bounded face or in the
unbounded region; unit cell borders covered by a segment are blocked, and a
flood fill over unblocked borders recovers the faces.
"""

from __future__ import annotations

import bisect
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class GeometryError(ValueError):
    """Base class for invalid segment input."""


class NonAxisParallel(GeometryError):
    pass


class ZeroLengthSegment(GeometryError):
    pass


class EmptyInput(GeometryError):
    pass


class NotAVertex(GeometryError):
    pass


class Point(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True, order=True)
class Segment:
    a: Point
    b: Point

    @classmethod
    def of(cls, x1: int, y1: int, x2: int, y2: int) -> "Segment":
        p, q = Point(int(x1), int(y1)), Point(int(x2), int(y2))
        if p == q:
            raise ZeroLengthSegment(f"zero-length segment at {tuple(p)}")
        if p.x != q.x and p.y != q.y:
            raise NonAxisParallel(f"segment {tuple(p)}-{tuple(q)} is not axis-parallel")
        return cls(*sorted((p, q)))

    @property
    def horizontal(self) -> bool:
        return self.a.y == self.b.y

    def covers(self, p: Point) -> bool:
        return self.a.x <= p.x <= self.b.x and self.a.y <= p.y <= self.b.y

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a.x, self.a.y, self.b.x, self.b.y)


@dataclass(frozen=True)
class SegmentSet:
    segments: tuple[Segment, ...]

    @classmethod
    def of(cls, segments: Iterable[Segment | Sequence[int]]) -> "SegmentSet":
        out = []
        for s in segments:
            out.append(s if isinstance(s, Segment) else Segment.of(*s))
        # duplicates are dropped silently, order of first appearance kept
        return cls(tuple(dict.fromkeys(out)))

    @property
    def m(self) -> int:
        return len(self.segments)

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def translated(self, dx: int, dy: int) -> "SegmentSet":
        return SegmentSet.of(
            (s.a.x + dx, s.a.y + dy, s.b.x + dx, s.b.y + dy) for s in self.segments
        )


class FaceClass(str, Enum):
    GENERIC = "generic"
    VARIABLE = "variable"
    CLAUSE = "clause"
    OUTER = "outer"


@dataclass(frozen=True)
class Face:
    id: int
    cells: frozenset[tuple[int, int]]
    is_rectangle: bool
    cls: FaceClass = FaceClass.GENERIC

    @property
    def bbox(self) -> tuple[int, int, int, int]:
        """Cell-index box ``(i0, j0, i1, j1)``, inclusive."""
        i = [c[0] for c in self.cells]
        j = [c[1] for c in self.cells]
        return min(i), min(j), max(i), max(j)


@dataclass(frozen=True, eq=False)
class Subdivision:
    segments: SegmentSet
    xs: tuple[int, ...]
    ys: tuple[int, ...]
    # blocked_v[i, j]: vertical unit border x=xs[i], ys[j]..ys[j+1] is on a segment
    blocked_v: np.ndarray
    # blocked_h[i, j]: horizontal unit border y=ys[j], xs[i]..xs[i+1] is on a segment
    blocked_h: np.ndarray
    cell_face: np.ndarray
    vertices: tuple[Point, ...]
    faces: tuple[Face, ...]
    vertex_to_faces: tuple[frozenset[int], ...]
    adjacency: tuple[frozenset[int], ...]
    edge_count: int
    component_count: int
    _vertex_index: dict = field(repr=False, default_factory=dict)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def vertex_index(self, p: Point | tuple[int, int]) -> int:
        try:
            return self._vertex_index[Point(*p)]
        except KeyError:
            raise NotAVertex(f"{tuple(p)} is not a vertex of the subdivision") from None

    def euler_faces(self) -> int:
        return self.edge_count - len(self.vertices) + self.component_count

    def face_at(self, x: float, y: float) -> int | None:
        """Face containing the point ``(x, y)``, which must lie inside a cell."""
        i = bisect.bisect_right(self.xs, x) - 1
        j = bisect.bisect_right(self.ys, y) - 1
        if not (0 <= i < len(self.xs) - 1 and 0 <= j < len(self.ys) - 1):
            return None
        if x in self.xs or y in self.ys:
            raise ValueError(f"probe ({x}, {y}) lies on a grid line")
        f = int(self.cell_face[i, j])
        return f if f >= 0 else None

    def cell_box(self, cell: tuple[int, int]) -> tuple[int, int, int, int]:
        i, j = cell
        return self.xs[i], self.ys[j], self.xs[i + 1], self.ys[j + 1]

    def face_boundary_edges(self, f: int) -> list[tuple[Point, Point]]:
        """Unit boundary edges of face ``f`` oriented with the face on the left."""
        cells = self.faces[f].cells
        xs, ys = self.xs, self.ys
        out = []
        for i, j in sorted(cells):
            x0, y0, x1, y1 = xs[i], ys[j], xs[i + 1], ys[j + 1]
            if (i, j - 1) not in cells:
                out.append((Point(x0, y0), Point(x1, y0)))
            if (i + 1, j) not in cells:
                out.append((Point(x1, y0), Point(x1, y1)))
            if (i, j + 1) not in cells:
                out.append((Point(x1, y1), Point(x0, y1)))
            if (i - 1, j) not in cells:
                out.append((Point(x0, y1), Point(x0, y0)))
        return out

    def face_loops(self, f: int) -> list[list[Point]]:
        """Closed boundary loops of face ``f`` (outer boundary and holes)."""
        edges = self.face_boundary_edges(f)
        succ: dict[Point, list[Point]] = {}
        for a, b in edges:
            succ.setdefault(a, []).append(b)
        loops = []
        while succ:
            start = next(iter(succ))
            loop = [start]
            cur = start
            while True:
                nxt = succ[cur].pop()
                if not succ[cur]:
                    del succ[cur]
                if nxt == start:
                    break
                loop.append(nxt)
                cur = nxt
            loops.append(_drop_collinear(loop))
        return loops


def _drop_collinear(loop: list[Point]) -> list[Point]:
    out = []
    n = len(loop)
    for k in range(n):
        p, q, r = loop[k - 1], loop[k], loop[(k + 1) % n]
        if (q.x - p.x) * (r.y - q.y) - (q.y - p.y) * (r.x - q.x) != 0:
            out.append(q)
    return out or loop


def build_subdivision(segments: SegmentSet | Iterable) -> Subdivision:
    if not isinstance(segments, SegmentSet):
        segments = SegmentSet.of(segments)
    if not segments.segments:
        raise EmptyInput("no segments given")

    xs = tuple(sorted({c for s in segments for c in (s.a.x, s.b.x)}))
    ys = tuple(sorted({c for s in segments for c in (s.a.y, s.b.y)}))
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: j for j, y in enumerate(ys)}
    nx, ny = len(xs), len(ys)

    blocked_v = np.zeros((nx, max(ny - 1, 0)), dtype=bool)
    blocked_h = np.zeros((max(nx - 1, 0), ny), dtype=bool)
    for s in segments:
        if s.horizontal:
            blocked_h[xi[s.a.x]:xi[s.b.x], yi[s.a.y]] = True
        else:
            blocked_v[xi[s.a.x], yi[s.a.y]:yi[s.b.y]] = True

    cell_face = _flood_faces(blocked_v, blocked_h)
    faces = _make_faces(cell_face, blocked_v, blocked_h)

    endpoints = {p for s in segments for p in (s.a, s.b)}
    vertices = []
    for j in range(ny):
        for i in range(nx):
            p = Point(xs[i], ys[j])
            on_h = (i > 0 and blocked_h[i - 1, j]) or (i < nx - 1 and blocked_h[i, j])
            on_v = (j > 0 and blocked_v[i, j - 1]) or (j < ny - 1 and blocked_v[i, j])
            if p in endpoints or (on_h and on_v):
                vertices.append(p)
    vindex = {p: k for k, p in enumerate(vertices)}

    edge_count, components = _graph_counts(vertices, vindex, xs, ys, blocked_v, blocked_h)

    vertex_to_faces = tuple(
        frozenset(_faces_around(cell_face, xi[p.x], yi[p.y])) for p in vertices
    )
    adj: list[set[int]] = [set() for _ in faces]
    for i in range(nx):
        for j in range(ny):
            around = _faces_around(cell_face, i, j)
            for f in around:
                adj[f].update(around)
    for f, nb in enumerate(adj):
        nb.discard(f)

    for arr in (blocked_v, blocked_h, cell_face):
        arr.setflags(write=False)
    return Subdivision(
        segments=segments,
        xs=xs,
        ys=ys,
        blocked_v=blocked_v,
        blocked_h=blocked_h,
        cell_face=cell_face,
        vertices=tuple(vertices),
        faces=tuple(faces),
        vertex_to_faces=vertex_to_faces,
        adjacency=tuple(frozenset(a) for a in adj),
        edge_count=edge_count,
        component_count=components,
        _vertex_index=vindex,
    )


def _faces_around(cell_face: np.ndarray, i: int, j: int) -> set[int]:
    w, h = cell_face.shape
    out = set()
    for ci in (i - 1, i):
        for cj in (j - 1, j):
            if 0 <= ci < w and 0 <= cj < h and cell_face[ci, cj] >= 0:
                out.add(int(cell_face[ci, cj]))
    return out


def _flood_faces(blocked_v: np.ndarray, blocked_h: np.ndarray) -> np.ndarray:
    """Label cells with bounded-face ids in scan order; -1 marks the unbounded region."""
    w, h = blocked_v.shape[0] - 1, blocked_h.shape[1] - 1
    if w <= 0 or h <= 0:
        return np.full((max(w, 0), max(h, 0)), -1, dtype=np.int64)
    label = np.full((w, h), -2, dtype=np.int64)

    def neighbours(i, j):
        if i > 0 and not blocked_v[i, j]:
            yield i - 1, j
        if i < w - 1 and not blocked_v[i + 1, j]:
            yield i + 1, j
        if j > 0 and not blocked_h[i, j]:
            yield i, j - 1
        if j < h - 1 and not blocked_h[i, j + 1]:
            yield i, j + 1

    # cells with an open border on the grid rim reach infinity
    queue = deque()
    for i in range(w):
        for j in (0, h - 1):
            open_rim = (j == 0 and not blocked_h[i, 0]) or (j == h - 1 and not blocked_h[i, h])
            if open_rim and label[i, j] == -2:
                label[i, j] = -1
                queue.append((i, j))
    for j in range(h):
        for i in (0, w - 1):
            open_rim = (i == 0 and not blocked_v[0, j]) or (i == w - 1 and not blocked_v[w, j])
            if open_rim and label[i, j] == -2:
                label[i, j] = -1
                queue.append((i, j))
    _bfs(label, queue, -1, neighbours)

    next_id = 0
    for j in range(h):
        for i in range(w):
            if label[i, j] == -2:
                label[i, j] = next_id
                _bfs(label, deque([(i, j)]), next_id, neighbours)
                next_id += 1
    return label


def _bfs(label, queue, value, neighbours):
    while queue:
        c = queue.popleft()
        for n in neighbours(*c):
            if label[n] == -2:
                label[n] = value
                queue.append(n)


def _make_faces(cell_face, blocked_v, blocked_h) -> list[Face]:
    cells_by_face: dict[int, list[tuple[int, int]]] = {}
    w, h = cell_face.shape
    for i in range(w):
        for j in range(h):
            f = int(cell_face[i, j])
            if f >= 0:
                cells_by_face.setdefault(f, []).append((i, j))
    faces = []
    for f in range(len(cells_by_face)):
        cells = cells_by_face[f]
        i0 = min(c[0] for c in cells)
        i1 = max(c[0] for c in cells)
        j0 = min(c[1] for c in cells)
        j1 = max(c[1] for c in cells)
        full = len(cells) == (i1 - i0 + 1) * (j1 - j0 + 1)
        slit = bool(blocked_v[i0 + 1:i1 + 1, j0:j1 + 1].any()) or bool(
            blocked_h[i0:i1 + 1, j0 + 1:j1 + 1].any()
        )
        faces.append(Face(f, frozenset(cells), full and not slit))
    return faces


def _graph_counts(vertices, vindex, xs, ys, blocked_v, blocked_h) -> tuple[int, int]:
    """Edges and connected components of the planar graph of the segment union."""
    parent = list(range(len(vertices)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    edges = 0
    nx, ny = len(xs), len(ys)
    # horizontal lines: consecutive vertices joined by fully covered pieces
    for j in range(ny):
        prev = None
        for i in range(nx):
            if prev is not None and not blocked_h[i - 1, j]:
                prev = None
            k = vindex.get(Point(xs[i], ys[j]))
            if k is not None:
                if prev is not None:
                    edges += 1
                    parent[find(prev)] = find(k)
                prev = k
    for i in range(nx):
        prev = None
        for j in range(ny):
            if prev is not None and not blocked_v[i, j - 1]:
                prev = None
            k = vindex.get(Point(xs[i], ys[j]))
            if k is not None:
                if prev is not None:
                    edges += 1
                    parent[find(prev)] = find(k)
                prev = k
    components = len({find(k) for k in range(len(vertices))})
    return edges, components


def stabbed_faces(sub: Subdivision, p: Point | tuple[int, int]) -> frozenset[int]:
    """Faces whose closure contains the vertex ``p``."""
    return sub.vertex_to_faces[sub.vertex_index(p)]


def face_adjacency(sub: Subdivision) -> set[tuple[int, int]]:
    """Pairs ``(f, g)``, ``f < g``, of faces whose closures intersect."""
    return {(f, g) for f, nb in enumerate(sub.adjacency) for g in nb if f < g}


def rectangular_faces(sub: Subdivision) -> frozenset[int]:
    return frozenset(f.id for f in sub.faces if f.is_rectangle)


def target_faces(sub: Subdivision, target: str = "all") -> frozenset[int]:
    """Face filter shared by all solvers: ``"all"`` or ``"rect"``."""
    if target == "all":
        return frozenset(range(len(sub.faces)))
    if target == "rect":
        return rectangular_faces(sub)
    raise ValueError(f"unknown face filter {target!r}")

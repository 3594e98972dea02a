"""Seeded instance generators: guillotine partitions, grids and gadgets."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .geometry import SegmentSet


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str = "guillotine"
    rooms: int = 1
    dims: tuple[int, int] = (2, 2)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("guillotine", "grid", "gadget"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.rooms < 1:
            raise ValueError("rooms must be >= 1")
        if min(self.dims) < 1:
            raise ValueError("grid dimensions must be >= 1")


def guillotine(rooms: int, seed: int = 0, size: int | None = None) -> SegmentSet:
    """Recursive random axis cuts of a square into exactly ``rooms`` rectangles."""
    rng = random.Random(seed)
    size = size or 4 * rooms + 4
    segs = [(0, 0, size, 0), (size, 0, size, size), (0, size, size, size), (0, 0, 0, size)]
    boxes = [(0, 0, size, size)]
    while len(boxes) < rooms:
        splittable = [b for b in boxes if b[2] - b[0] >= 2 or b[3] - b[1] >= 2]
        x0, y0, x1, y1 = box = rng.choice(splittable)
        boxes.remove(box)
        vertical = x1 - x0 >= 2 and (y1 - y0 < 2 or rng.random() < 0.5)
        if vertical:
            c = rng.randint(x0 + 1, x1 - 1)
            segs.append((c, y0, c, y1))
            boxes += [(x0, y0, c, y1), (c, y0, x1, y1)]
        else:
            c = rng.randint(y0 + 1, y1 - 1)
            segs.append((x0, c, x1, c))
            boxes += [(x0, y0, x1, c), (x0, c, x1, y1)]
    return SegmentSet.of(segs)


def grid(a: int, b: int, pitch: int = 1) -> SegmentSet:
    """An ``a`` x ``b`` lattice of unit rooms (``a`` columns, ``b`` rows)."""
    w, h = a * pitch, b * pitch
    segs = [(0, j * pitch, w, j * pitch) for j in range(b + 1)]
    segs += [(i * pitch, 0, i * pitch, h) for i in range(a + 1)]
    return SegmentSet.of(segs)


def generate(spec: GeneratorSpec) -> SegmentSet:
    if spec.kind == "guillotine":
        return guillotine(spec.rooms, spec.seed)
    if spec.kind == "grid":
        return grid(*spec.dims)
    # gadget: a bare stabbing variable gadget with ``rooms`` clause slots per side
    from .reductions.gadgets import stab_variable_gadget

    return stab_variable_gadget(spec.rooms).segments

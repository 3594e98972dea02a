"""The seeded benchmark corpus shared by the acceptance suite and ``bench``."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .generators import grid, guillotine
from .geometry import SegmentSet


@dataclass(frozen=True)
class CorpusItem:
    name: str
    kind: str
    segments: SegmentSet
    rooms: int | None = None


def corpus(count: int = 200, seed: int = 2024) -> list[CorpusItem]:
    """Guillotine partitions (<= 12 rooms), grids (<= 4x4) and m=1 gadgets.

    The mix is fixed: every 10 items hold 6 guillotine partitions, 3 grids and
    one gadget, cycling through the three gadget kinds.
    """
    from .reductions.gadgets import variable_gadget

    rng = random.Random(seed)
    gadgets = [variable_gadget(p, 1).segments for p in ("stab", "mis", "mds")]
    items = []
    for k in range(count):
        slot = k % 10
        if slot < 6:
            rooms = rng.randint(1, 12)
            s = rng.randrange(1 << 30)
            items.append(CorpusItem(f"guillotine-{rooms}-{s}", "guillotine", guillotine(rooms, s), rooms))
        elif slot < 9:
            a, b = rng.randint(1, 4), rng.randint(1, 4)
            items.append(CorpusItem(f"grid-{a}x{b}", "grid", grid(a, b), a * b))
        else:
            g = (k // 10) % 3
            name = ("stab", "mis", "mds")[g]
            items.append(CorpusItem(f"gadget-{name}-m1", "gadget", gadgets[g]))
    return items


def guillotine_corpus(count: int = 100, seed: int = 7, max_rooms: int = 12) -> list[CorpusItem]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        rooms = rng.randint(1, max_rooms)
        s = rng.randrange(1 << 30)
        out.append(CorpusItem(f"guillotine-{rooms}-{s}", "guillotine", guillotine(rooms, s), rooms))
    return out

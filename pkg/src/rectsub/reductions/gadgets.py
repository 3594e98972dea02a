"""Gadget geometry for the three hardness reductions.

Every variable gadget is a box ``R`` split by four horizontal lines
``h1`` (top) .. ``h4`` (bottom) and four verticals ``v1`` .. ``v4``. The
strip between ``h1`` and ``h2`` (and its mirror image between ``h3`` and
``h4``) is cut into small rectangles that clause legs attach to. Gadgets
are symmetric about their horizontal mid line, so each half is drawn once
in "top" coordinates and reflected for the bottom side.

The compiler records a probe point strictly inside every named face; after
building the subdivision the probes are located to produce the manifest,
and the set of rectangular faces is checked against the names that are
expected to be rectangles.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..geometry import Face, FaceClass, Point, SegmentSet, Subdivision, build_subdivision
from .formula import Clause, LayoutInvalid, Rp3SatInstance

GAP = 4  # horizontal distance between consecutive variable gadgets


class GeneratorError(RuntimeError):
    """The emitted geometry failed its own manifest self-check."""


@dataclass(frozen=True)
class ManifestEntry:
    face: int
    cls: str
    owner: int | None  # variable index (1-based) or clause index (0-based)
    name: str
    rectangular: bool

    def to_json(self) -> dict:
        return {
            "face": self.face,
            "class": self.cls,
            "owner": self.owner,
            "name": self.name,
            "rectangular": self.rectangular,
        }


@dataclass(frozen=True, eq=False)
class ReductionOutput:
    segments: SegmentSet
    problem: str
    variant: str
    target: int
    manifest: tuple[ManifestEntry, ...]
    # variable index -> (first, second) canonical solution: point tuples for
    # stab, frozensets of face ids for mis/mds
    canonical: dict
    instance: Rp3SatInstance
    subdivision: Subdivision
    slots_per_side: int
    # (kind, owner, name) -> face id
    named: dict = field(repr=False, default_factory=dict)
    # clause index -> [(variable, positive, attached variable face id)]
    attachments: dict = field(repr=False, default_factory=dict)

    @property
    def face_filter(self) -> str:
        return self.variant

    def face(self, kind: str, owner: int, name: str) -> int:
        return self.named[(kind, owner, name)]

    def gadget_faces(self, var: int) -> frozenset[int]:
        return frozenset(e.face for e in self.manifest if e.cls == "variable" and e.owner == var)

    def clause_faces(self, alpha: int) -> frozenset[int]:
        return frozenset(e.face for e in self.manifest if e.cls == "clause" and e.owner == alpha)

    def manifest_json(self) -> list[dict]:
        return [e.to_json() for e in self.manifest]


class _Canvas:
    def __init__(self):
        self.segs: list[tuple[int, int, int, int]] = []
        # (kind, owner, name, x, y, expect_rectangle)
        self.probes: list[tuple[str, int, str, float, float, bool]] = []

    def seg(self, x1, y1, x2, y2):
        if (x1, y1) != (x2, y2):
            self.segs.append((x1, y1, x2, y2))

    def box(self, x1, y1, x2, y2):
        self.seg(x1, y1, x2, y1)
        self.seg(x2, y1, x2, y2)
        self.seg(x1, y2, x2, y2)
        self.seg(x1, y1, x1, y2)

    def probe(self, kind, owner, name, x, y, rect=True):
        self.probes.append((kind, owner, name, x, y, rect))


class _Side:
    """Draws in top-half coordinates; the bottom side reflects ``y -> T - y``."""

    def __init__(self, canvas: _Canvas, side: str, height: int):
        self.c = canvas
        self.flip = side == "bottom"
        self.t = height

    def y(self, y):
        return self.t - y if self.flip else y

    def h(self, y, x1, x2):
        self.c.seg(x1, self.y(y), x2, self.y(y))

    def v(self, x, y1, y2):
        self.c.seg(x, self.y(y1), x, self.y(y2))

    def box(self, x1, y1, x2, y2):
        self.c.box(x1, self.y(y1), x2, self.y(y2))

    def probe(self, kind, owner, name, x, y, rect=True):
        self.c.probe(kind, owner, name, x, self.y(y), rect)

    def point(self, x, y) -> Point:
        return Point(x, self.y(y))


def _pieces(lo, hi, holes):
    """``[lo, hi]`` minus the open intervals in ``holes``."""
    out, at = [], lo
    for a, b in sorted(holes):
        out.append((at, a))
        at = b
    out.append((at, hi))
    return [(a, b) for a, b in out if a < b]


# ---------------------------------------------------------------- stabbing
#
# Legs l_1..l_4m at pitch 2 in each half; the 4m+1 rectangles between them
# plus R1 (left), R3 (right) and R5 (centre) give 8m+5 rectangles. A clause
# attaches by extending three consecutive legs up to its rectangle and
# raising the piece of h1 between them.


class _Stab:
    height = 6
    pitch = 2

    def __init__(self, m):
        self.m = m
        self.legs = 4 * m

    def width(self):
        return self.pitch * (self.legs + 1) + 4

    def clause_base(self, depth):
        return 6 + 3 * depth

    def triple(self, side, k, positive):
        # the middle leg of a positive triple carries a point of P1
        start = 4 * k - 3 if (side == "top") == positive else 4 * k - 2
        return start, start + 1, start + 2

    def variable(self, c: _Canvas, i, x0, attach, variant):
        m = self.m
        v1, v2 = x0, x0 + 2
        xs = [v2 + self.pitch * j for j in range(self.legs + 2)]  # xs[0]=v2 .. xs[-1]=v3
        v3, v4 = xs[-1], xs[-1] + 2
        for x in (v1, v2, v3, v4):
            c.seg(x, 0, x, 6)
        c.seg(v2, 4, v3, 4)
        c.seg(v2, 2, v3, 2)
        c.probe("variable", i, "R1", v1 + 0.5, 3.5)
        c.probe("variable", i, "R3", v3 + 0.5, 3.5)
        c.probe("variable", i, "R5", v2 + 0.5, 3.5)
        legpts = {}
        extents = {}
        for side in ("top", "bottom"):
            s = _Side(c, side, 6)
            up = {}  # leg -> top y
            holes = []
            middles = set()
            for k, positive, alpha, yc in attach[side]:
                t = self.triple(side, k, positive)
                for j in t:
                    up[j] = yc
                holes.append((xs[t[0]], xs[t[2]]))
                middles.add(t[1])
                extents[alpha] = extents.get(alpha, []) + [(xs[t[0]], xs[t[2]])]
            for j in range(1, self.legs + 1):
                s.v(xs[j], 4, up.get(j, 6))
                legpts[(side, j)] = s.point(xs[j], up[j] if j in middles else 6)
            for a, b in _pieces(v1, v4, holes):
                s.h(6, a, b)
            for q in range(1, self.legs + 2):
                name = f"r{q}" if side == "top" else f"r{8 * m + 3 - q}"
                s.probe("variable", i, name, xs[q - 1] + 0.5, 4.5)
        # the cycle R1, r_1, ..., r_{4m+1}, R3, bottom row right to left; p_j
        # stabs the j-th and (j+1)-th members
        n_leg = self.legs
        p = {1: Point(v2, 6), 2 * n_leg + 4: Point(v2, 0)}
        for j in range(1, n_leg + 1):
            p[j + 1] = legpts[("top", j)]
            p[2 * n_leg + 4 - j] = legpts[("bottom", j)]
        p[n_leg + 2] = Point(v3, 6)
        p[n_leg + 3] = Point(v3, 0)
        first = [p[j] for j in sorted(p) if j % 2 == 1]
        second = [p[j] for j in sorted(p) if j % 2 == 0]
        # one point of each set moves onto h2 so that R5 is stabbed as well
        first[0] = Point(v2, 4)
        second[0] = Point(xs[1], 4)
        return (tuple(first), tuple(second)), extents

    def clause(self, c: _Canvas, side, alpha, parts, depth, variant):
        s = _Side(c, side, 6)
        yc = self.clause_base(depth)
        xl, xr = min(a for a, _ in parts), max(b for _, b in parts)
        s.box(xl, yc, xr, yc + 1)
        s.probe("clause", alpha, "r_alpha", xl + 0.5, yc + 0.5)


# ---------------------------------------------------------- independent set
#
# 4m-2 rectangles of width 5 per half, 8m-1 rectangles in total. A clause is
# a ring of nine rectangles; its three legs stand on variable rectangles.


class _Mis:
    height = 6
    pitch = 5

    def __init__(self, m):
        self.m = m
        self.cells = 4 * m - 2

    def width(self):
        return self.pitch * (self.cells + 2)

    def clause_base(self, depth):
        return 8 + 7 * (depth - 1)

    def position(self, k, positive):
        return 4 * k - 3 if positive else 4 * k - 2

    def variable(self, c: _Canvas, i, x0, attach, variant):
        m = self.m
        v1, v2 = x0, x0 + 5
        xs = [v2 + self.pitch * q for q in range(self.cells + 1)]
        v3, v4 = xs[-1], xs[-1] + 5
        for x in (v1, v2, v3, v4):
            c.seg(x, 0, x, 6)
        c.seg(v1, 6, v4, 6)
        c.seg(v1, 0, v4, 0)
        c.seg(v2, 4, v3, 4)
        c.seg(v2, 2, v3, 2)
        c.probe("variable", i, "R1", v1 + 0.5, 3.5)
        c.probe("variable", i, "R3", v3 + 0.5, 3.5)
        c.probe("variable", i, "R5", v2 + 0.5, 3.5)
        names = {}
        extents = {}
        for side in ("top", "bottom"):
            s = _Side(c, side, 6)
            for q in range(1, self.cells):
                s.v(xs[q], 4, 6)
            for q in range(1, self.cells + 1):
                name = f"r{q}" if side == "top" else f"r{8 * m - 3 - q}"
                names[(side, q)] = name
                s.probe("variable", i, name, xs[q - 1] + 0.5, 4.5)
            for k, positive, alpha, _ in attach[side]:
                q = self.position(k, positive)
                extents[alpha] = extents.get(alpha, []) + [(xs[q - 1] + 1, names[(side, q)])]
        odd = [n for (side, q), n in names.items() if q % 2 == 1] + ["R3"]
        even = [n for (side, q), n in names.items() if q % 2 == 0] + ["R1"]
        return (tuple(odd), tuple(even)), extents

    def clause(self, c: _Canvas, side, alpha, parts, depth, variant):
        s = _Side(c, side, 6)
        yc = self.clause_base(depth)
        l1, l2, l3 = sorted(x for x, _ in parts)
        ma = (l1 + 3 + l2 + 1) // 2
        mc = (l2 + 2 + l3) // 2
        me = (l1 + 3 + l3) // 2
        for x, top in ((l1, yc + 4), (l2, yc), (l3, yc + 4)):
            s.v(x, 6, top)
            s.v(x + 3, 6, top)
        s.h(yc, l1 + 3, l3)
        s.h(yc + 1, l1 + 3, l2 + 1)
        s.h(yc + 1, l2 + 2, l3)
        for x in (ma, l2 + 1, l2 + 2, mc):
            s.v(x, yc, yc + 1)
        s.h(yc + 3, l1 + 3, l3)
        s.h(yc + 4, l1, l3 + 3)
        s.v(me, yc + 3, yc + 4)
        for j, x in enumerate((l1, l2, l3), start=1):
            s.probe("clause", alpha, f"r_alpha^{j}", x + 0.5, 6.5)
        s.probe("clause", alpha, "r_alpha^4", l1 + 3.5, yc + 0.5)
        s.probe("clause", alpha, "r_alpha^5", ma + 0.5, yc + 0.5)
        s.probe("clause", alpha, "r_alpha^6", l2 + 2.5, yc + 0.5)
        s.probe("clause", alpha, "r_alpha^7", mc + 0.5, yc + 0.5)
        s.probe("clause", alpha, "r_alpha^8", me + 0.5, yc + 3.5)
        s.probe("clause", alpha, "r_alpha^9", l1 + 3.5, yc + 3.5)
        s.probe("outer", alpha, "hole", l1 + 3.5, yc + 1.5, rect=False)


# -------------------------------------------------------- dominating set
#
# 3m+1 rectangles of width 4 per half, R1 and R3 each cut in two, and 2m+2
# small squares s_i hanging into R5: 8m+8 rectangles. Variant "all" adds a
# square b_i straddling the separator above each s_i.


class _Mds:
    height = 12
    pitch = 4

    def __init__(self, m):
        self.m = m
        self.cells = 3 * m + 1

    def width(self):
        return self.pitch * (self.cells + 2)

    def clause_base(self, depth):
        return 12 + 3 * depth

    def position(self, side, k, positive):
        if side == "top":
            return 3 * k - 1 if positive else 3 * k - 2
        i = 2 * self.m + 2 - k
        return 6 * self.m + 6 - 3 * i if positive else 6 * self.m + 7 - 3 * i

    def variable(self, c: _Canvas, i, x0, attach, variant):
        m = self.m
        v1, v2 = x0, x0 + 4
        xs = [v2 + self.pitch * q for q in range(self.cells + 1)]
        v3, v4 = xs[-1], xs[-1] + 4
        c.seg(v1, 0, v1, 12)
        c.seg(v4, 0, v4, 12)
        c.seg(v2, 3, v2, 9)
        c.seg(v3, 3, v3, 9)
        c.seg(v1, 6, v2, 6)
        c.seg(v3, 6, v4, 6)
        c.probe("variable", i, f"r{6 * m + 6}", v1 + 1.5, 11.5)
        c.probe("variable", i, f"r{6 * m + 5}", v1 + 1.5, 0.5)
        c.probe("variable", i, f"r{3 * m + 2}", v3 + 2.5, 11.5)
        c.probe("variable", i, f"r{3 * m + 3}", v3 + 2.5, 0.5)
        c.probe("variable", i, "R5", v2 + 2.5, 6.5, rect=False)
        extents = {}
        for side in ("top", "bottom"):
            s = _Side(c, side, 12)
            ext_top = {}  # position -> clause base
            for k, positive, alpha, yc in attach[side]:
                q = self.position(side, k, positive)
                ext_top[q] = yc
                extents[alpha] = extents.get(alpha, []) + [(xs[q - 1], xs[q])]
            # separators carrying an s square (and a b square for variant all)
            if side == "top":
                hosts = {3 * p - 2: p for p in range(1, m + 1)}
                hosts[self.cells] = m + 1
            else:
                hosts = {6 * m + 6 - 3 * p: p for p in range(m + 2, 2 * m + 2)}
                hosts[0] = 2 * m + 2
            for q in range(self.cells + 1):
                top = max(ext_top.get(q, 12), ext_top.get(q + 1, 12))
                gaps = [(10, 11)] if variant == "all" and q in hosts else []
                for a, b in _pieces(9, top, gaps):
                    s.v(xs[q], a, b)
            for a, b in _pieces(v1, v4, [(xs[q - 1], xs[q]) for q in ext_top]):
                s.h(12, a, b)
            s.h(9, v2, v3)
            for q, p in hosts.items():
                x = xs[q]
                if q == self.cells and side == "top":
                    lo, hi = x - 2, x
                elif q == 0:
                    lo, hi = x, x + 2
                else:
                    lo, hi = x - 1, x + 1
                s.box(lo, 7, hi, 9)
                s.probe("variable", i, f"s{p}", lo + 0.5, 8.5)
                if variant == "all":
                    s.box(x - 1, 10, x + 1, 11)
                    s.probe("variable", i, f"b{p}", x - 0.5, 10.5)
            for q in range(1, self.cells + 1):
                name = f"r{q}" if side == "top" else f"r{6 * m + 5 - q}"
                rect = not (variant == "all" and (q - 1 in hosts or q in hosts))
                s.probe("variable", i, name, xs[q - 1] + 1.5, 11.5, rect)
        if variant == "all":
            # b squares on v2 and v3 also notch the halves of R1 and R3 they touch
            c.probes = [
                pr[:5] + (False,)
                if pr[0] == "variable" and pr[1] == i and pr[2] in (f"r{3 * m + 2}", f"r{6 * m + 5}")
                else pr
                for pr in c.probes
            ]
        first = tuple(f"r{3 * k - 2}" for k in range(1, 2 * m + 3))
        second = tuple(f"r{3 * k - 1}" for k in range(1, 2 * m + 3))
        return (first, second), extents

    def clause(self, c: _Canvas, side, alpha, parts, depth, variant):
        s = _Side(c, side, 12)
        yc = self.clause_base(depth)
        xl, xr = min(a for a, _ in parts), max(b for _, b in parts)
        s.box(xl, yc, xr, yc + 1)
        s.probe("clause", alpha, "r_alpha", xl + 0.5, yc + 0.5)


_GADGETS = {"stab": _Stab, "mis": _Mis, "mds": _Mds}


def _per_gadget(problem: str, m: int) -> int:
    return {"stab": 4 * m + 2, "mis": 4 * m - 1, "mds": 2 * m + 2}[problem]


def target_value(problem: str, n: int, m: int, clauses: int | None = None) -> int:
    """Optimum threshold: n(4m+2), n(4m-1)+4m or n(2m+2)."""
    extra = 4 * (m if clauses is None else clauses) if problem == "mis" else 0
    return n * _per_gadget(problem, m) + extra


def compile_reduction(
    inst: Rp3SatInstance, problem: str, variant: str = "rect", slots: int | None = None
) -> ReductionOutput:
    """Emit the gadget geometry for ``inst``.

    ``slots`` is the number of clause slots per gadget side; it defaults to
    the clause count ``m`` as in the reductions, and may be set explicitly to
    draw bare gadgets.
    """
    if problem not in _GADGETS:
        raise ValueError(f"unknown problem {problem!r}")
    if variant not in ("rect", "all"):
        raise ValueError(f"unknown variant {variant!r}")
    layout = inst.layout
    if layout.violations:
        raise LayoutInvalid(list(layout.violations))
    m = inst.m if slots is None else slots
    if m < 1:
        raise LayoutInvalid(["a gadget needs at least one clause slot"])
    if any(s > m for s in layout.slot.values()):
        raise LayoutInvalid([f"more than {m} clauses meet one variable side"])
    g = _GADGETS[problem](m)
    canvas = _Canvas()

    attach = {(v, side): [] for v in range(1, inst.n + 1) for side in ("top", "bottom")}
    for alpha, cl in enumerate(inst.clauses):
        yc = g.clause_base(layout.depth[alpha])
        for v in cl.variables:
            attach[(v, cl.side)].append((layout.slot[(alpha, v)], cl.sign(v), alpha, yc))

    canon_raw = {}
    parts: dict[int, list] = {}
    x0 = 0
    for v in range(1, inst.n + 1):
        canon_raw[v], ext = g.variable(
            canvas, v, x0, {s: attach[(v, s)] for s in ("top", "bottom")}, variant
        )
        for alpha, e in ext.items():
            parts.setdefault(alpha, []).extend(e)
        x0 += g.width() + GAP
    for alpha, cl in enumerate(inst.clauses):
        g.clause(canvas, cl.side, alpha, parts[alpha], layout.depth[alpha], variant)

    segs = SegmentSet.of(canvas.segs)
    sub = build_subdivision(segs)
    named, manifest, faces = _label(sub, canvas.probes)
    sub = replace(sub, faces=faces)

    if problem == "stab":
        canonical = canon_raw
    else:
        canonical = {
            v: tuple(frozenset(named[("variable", v, n)] for n in names) for names in pair)
            for v, pair in canon_raw.items()
        }
    attachments = {}
    if problem == "mis":
        for alpha, cl in enumerate(inst.clauses):
            legs = sorted(parts[alpha])
            vs = cl.variables
            attachments[alpha] = [
                (vs[j], cl.sign(vs[j]), named[("variable", vs[j], legs[j][1])]) for j in range(3)
            ]
    return ReductionOutput(
        segments=segs,
        problem=problem,
        variant=variant,
        target=target_value(problem, inst.n, m, inst.m),
        manifest=manifest,
        canonical=canonical,
        instance=inst,
        subdivision=sub,
        slots_per_side=m,
        named=named,
        attachments=attachments,
    )


def _label(sub: Subdivision, probes):
    named = {}
    labels = {}
    expect_rect = set()
    for kind, owner, name, x, y, rect in probes:
        f = sub.face_at(x, y)
        if f is None:
            raise GeneratorError(f"probe for {kind} {owner} {name} fell in the unbounded region")
        if f in labels:
            raise GeneratorError(
                f"{kind} {owner} {name} and {labels[f][:3]} share face {f}"
            )
        labels[f] = (kind, owner, name)
        named[(kind, owner, name)] = f
        if rect:
            expect_rect.add(f)
    actual = {f.id for f in sub.faces if f.is_rectangle}
    if actual != expect_rect:
        extra = sorted(labels.get(f, ("outer", None, f"face {f}")) for f in actual - expect_rect)
        missing = sorted(labels[f] for f in expect_rect - actual)
        raise GeneratorError(
            f"manifest self-check failed: unexpected rectangles {extra}, non-rectangular {missing}"
        )
    manifest, faces = [], []
    k = 0
    for face in sub.faces:
        kind, owner, name = labels.get(face.id, ("outer", None, None))
        if name is None:
            name = f"o{k}"
            k += 1
        cls = FaceClass(kind)
        faces.append(replace(face, cls=cls))
        manifest.append(ManifestEntry(face.id, cls.value, owner, name, face.is_rectangle))
    return named, tuple(manifest), tuple(faces)


def build_stab_reduction(inst: Rp3SatInstance, variant: str = "rect") -> ReductionOutput:
    return compile_reduction(inst, "stab", variant)


def build_mis_reduction(inst: Rp3SatInstance, variant: str = "rect") -> ReductionOutput:
    return compile_reduction(inst, "mis", variant)


def build_mds_reduction(inst: Rp3SatInstance, variant: str = "rect") -> ReductionOutput:
    return compile_reduction(inst, "mds", variant)


def _bare(problem: str, m: int, variant: str) -> ReductionOutput:
    return compile_reduction(Rp3SatInstance(1, ()), problem, variant, slots=m)


def stab_variable_gadget(m: int, variant: str = "rect") -> ReductionOutput:
    """A lone stabbing variable gadget with ``m`` clause slots per side."""
    return _bare("stab", m, variant)


def mis_variable_gadget(m: int, variant: str = "rect") -> ReductionOutput:
    return _bare("mis", m, variant)


def mds_variable_gadget(m: int, variant: str = "rect") -> ReductionOutput:
    return _bare("mds", m, variant)


def variable_gadget(problem: str, m: int, variant: str = "rect") -> ReductionOutput:
    return _bare(problem, m, variant)


__all__ = [
    "Clause",
    "GeneratorError",
    "ManifestEntry",
    "ReductionOutput",
    "build_mds_reduction",
    "build_mis_reduction",
    "build_stab_reduction",
    "compile_reduction",
    "mds_variable_gadget",
    "mis_variable_gadget",
    "stab_variable_gadget",
    "target_value",
    "variable_gadget",
]

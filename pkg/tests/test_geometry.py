import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rectsub.generators import grid, guillotine
from rectsub.geometry import (
    EmptyInput,
    NonAxisParallel,
    NotAVertex,
    Segment,
    SegmentSet,
    ZeroLengthSegment,
    build_subdivision,
    face_adjacency,
    rectangular_faces,
    stabbed_faces,
)
from rectsub.oracle import check_point_location

UNIT = [(0, 0, 1, 0), (1, 0, 1, 1), (0, 1, 1, 1), (0, 0, 0, 1)]
STRIP = [(0, 0, 3, 0), (0, 1, 3, 1), (0, 0, 0, 1), (1, 0, 1, 1), (2, 0, 2, 1), (3, 0, 3, 1)]


def sub_of(segs):
    return build_subdivision(SegmentSet.of(segs))


def test_segment_normalised_and_validated():
    assert Segment.of(3, 1, 0, 1).as_tuple() == (0, 1, 3, 1)
    with pytest.raises(NonAxisParallel):
        Segment.of(0, 0, 1, 1)
    with pytest.raises(ZeroLengthSegment):
        Segment.of(2, 2, 2, 2)


def test_duplicates_removed():
    assert SegmentSet.of(UNIT + [(1, 0, 0, 0)]).m == 4


def test_unit_square():
    sub = sub_of(UNIT)
    assert sub.n_faces == 1
    assert len(sub.vertices) == 4
    assert stabbed_faces(sub, (0, 0)) == {0}


def test_two_by_two_grid():
    sub = build_subdivision(grid(2, 2))
    assert (sub.n_faces, len(sub.vertices), sub.edge_count) == (4, 9, 12)
    assert sub.euler_faces() == 4
    assert stabbed_faces(sub, (1, 1)) == {0, 1, 2, 3}
    assert face_adjacency(sub) == {(f, g) for f in range(4) for g in range(f + 1, 4)}
    assert rectangular_faces(sub) == {0, 1, 2, 3}


def test_strip_stabbing_and_adjacency():
    sub = sub_of(STRIP)
    assert stabbed_faces(sub, (1, 0)) == {0, 1}
    assert face_adjacency(sub) == {(0, 1), (1, 2)}


def test_non_vertex_rejected():
    sub = sub_of(STRIP)
    with pytest.raises(NotAVertex):
        stabbed_faces(sub, (0, 5))


def test_single_face_has_no_adjacency():
    assert face_adjacency(sub_of(UNIT)) == set()


def test_slit_breaks_rectangle():
    sub = sub_of([(0, 0, 4, 0), (4, 0, 4, 4), (0, 4, 4, 4), (0, 0, 0, 4), (2, 0, 2, 2)])
    assert sub.n_faces == 1
    assert rectangular_faces(sub) == set()


def test_l_shape_not_rectangular():
    segs = [(0, 0, 2, 0), (2, 0, 2, 1), (1, 1, 2, 1), (1, 1, 1, 2), (0, 2, 1, 2), (0, 0, 0, 2)]
    sub = sub_of(segs)
    assert sub.n_faces == 1
    assert rectangular_faces(sub) == set()


def test_crossing_segments_make_vertices():
    sub = sub_of([(0, 1, 2, 1), (1, 0, 1, 2)])
    assert sub.n_faces == 0
    assert (1, 1) in sub.vertices


def test_degenerate_and_empty():
    assert sub_of([(0, 0, 5, 0)]).n_faces == 0
    with pytest.raises(EmptyInput):
        build_subdivision(SegmentSet.of([]))


def test_face_at_and_boundary_loops():
    sub = build_subdivision(grid(2, 1))
    assert sub.face_at(0.5, 0.5) != sub.face_at(1.5, 0.5)
    assert sub.face_at(5, 5) is None
    loops = sub.face_loops(0)
    assert len(loops) == 1 and len(loops[0]) == 4


# ---------------------------------------------------------------- properties

segment = st.tuples(
    st.integers(0, 8), st.integers(0, 8), st.integers(1, 6), st.booleans()
).map(lambda t: (t[0], t[1], t[0] + t[2], t[1]) if t[3] else (t[0], t[1], t[0], t[1] + t[2]))
segments = st.lists(segment, min_size=1, max_size=12)


@settings(max_examples=150, deadline=None)
@given(segments)
def test_euler_identity(segs):
    sub = sub_of(segs)
    assert sub.euler_faces() == sub.n_faces


@settings(max_examples=100, deadline=None)
@given(segments)
def test_each_vertex_stabs_at_most_four(segs):
    sub = sub_of(segs)
    assert all(len(fs) <= 4 for fs in sub.vertex_to_faces)


@settings(max_examples=100, deadline=None)
@given(segments)
def test_cells_partitioned(segs):
    sub = sub_of(segs)
    counts = np.zeros(sub.cell_face.shape, dtype=int)
    for f in sub.faces:
        for c in f.cells:
            counts[c] += 1
    unbounded = sub.cell_face == -1
    assert np.all(counts[~unbounded] == 1)
    assert np.all(counts[unbounded] == 0)


def _canonical(sub):
    """Relabel-free description: face boxes in real coordinates plus adjacency."""
    key = {}
    for f in sub.faces:
        key[f.id] = tuple(sorted(sub.cell_box(c) for c in f.cells))
    adj = {frozenset((key[f], key[g])) for f, g in face_adjacency(sub)}
    return sorted(key.values()), len(rectangular_faces(sub)), adj


@settings(max_examples=100, deadline=None)
@given(segments, st.integers(-50, 50), st.integers(-50, 50))
def test_translation_invariance(segs, dx, dy):
    s = SegmentSet.of(segs)
    a, b = build_subdivision(s), build_subdivision(s.translated(dx, dy))
    assert a.n_faces == b.n_faces
    boxes_a, rect_a, adj_a = _canonical(a)
    boxes_b, rect_b, adj_b = _canonical(b)
    shift = lambda bx: tuple((x0 - dx, y0 - dy, x1 - dx, y1 - dy) for x0, y0, x1, y1 in bx)
    assert sorted(shift(bx) for bx in boxes_b) == boxes_a
    assert rect_a == rect_b
    assert {frozenset(shift(bx) for bx in pair) for pair in adj_b} == adj_a


@settings(max_examples=60, deadline=None)
@given(segments, st.integers(0, 1000))
def test_point_location_oracle(segs, seed):
    assert check_point_location(sub_of(segs), samples=1000, seed=seed).ok


@pytest.mark.parametrize("rooms,seed", [(1, 0), (5, 3), (12, 9)])
def test_oracle_on_guillotine(rooms, seed):
    rep = check_point_location(build_subdivision(guillotine(rooms, seed)))
    assert rep.ok and rep.mismatches == []

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bstgeo.geometry import (
    FamilySpec,
    GridFrame,
    PermutationPointSet,
    Point,
    generate,
    make_permutation_point_set,
    manhattan_path,
    manhattan_path_exists,
    orientation,
    rect_is_empty,
)


def test_make_permutation_point_set_example():
    X = make_permutation_point_set((2, 6, 4, 3, 1, 5))
    assert X.points == {
        Point(2, 1), Point(6, 2), Point(4, 3), Point(3, 4), Point(1, 5), Point(5, 6)
    }


def test_make_permutation_singleton():
    assert make_permutation_point_set((1,)).points == {Point(1, 1)}


def test_make_permutation_rejects_bad_input():
    make_permutation_point_set((2, 1, 3))  # fine
    with pytest.raises(ValueError, match="duplicate"):
        make_permutation_point_set((2, 2, 3))
    with pytest.raises(ValueError, match="range"):
        make_permutation_point_set((1, 5))


def test_grid_frame_partition():
    frame = GridFrame(4)
    assert len(frame.margin_points) == 16
    assert len(frame.corner_points) == 4
    interior = {Point(x, y) for x in range(6) for y in range(6)} - frame.margin_points - frame.corner_points
    assert all(frame.is_interior(p) for p in interior)


def test_generate_sequential_is_diagonal():
    X = generate(FamilySpec("sequential", 4))
    assert X.seq == (1, 2, 3, 4)
    assert X.points == {Point(i, i) for i in range(1, 5)}


def test_generate_bit_reversal():
    assert generate(FamilySpec("bit_reversal", 4)).seq == (1, 3, 2, 4)
    assert generate(FamilySpec("bit_reversal", 8)).seq == (1, 5, 3, 7, 2, 6, 4, 8)
    with pytest.raises(ValueError, match="power of two"):
        FamilySpec("bit_reversal", 6)


def test_generate_random_deterministic():
    a = generate(FamilySpec("random", 6, 7))
    b = generate(FamilySpec("random", 6, 7))
    assert a.seq == b.seq
    assert a.seq != generate(FamilySpec("random", 6, 8)).seq


def _contains_pattern(seq, pattern):
    import itertools

    k = len(pattern)
    order = {v: i for i, v in enumerate(sorted(pattern))}
    target = tuple(order[v] for v in pattern)
    for combo in itertools.combinations(seq, k):
        order_c = {v: i for i, v in enumerate(sorted(combo))}
        if tuple(order_c[v] for v in combo) == target:
            return True
    return False


def test_generate_separable_avoids_forbidden_patterns():
    for seed in range(10):
        X = generate(FamilySpec("separable", 8, seed))
        assert not _contains_pattern(X.seq, (2, 4, 1, 3))
        assert not _contains_pattern(X.seq, (3, 1, 4, 2))


def test_rect_is_empty_examples():
    assert rect_is_empty({Point(1, 2), Point(2, 1)}, Point(1, 2), Point(2, 1))
    assert not rect_is_empty(
        {Point(1, 2), Point(2, 1), Point(2, 2)}, Point(1, 2), Point(2, 1)
    )  # boundary point counts
    X = make_permutation_point_set((2, 6, 4, 3, 1, 5))
    assert rect_is_empty(X.points, Point(2, 1), Point(3, 4))


def test_manhattan_path_examples():
    Y = {Point(1, 1), Point(1, 3), Point(4, 3)}
    assert manhattan_path(Y, Point(1, 1), Point(4, 3)) == [Point(1, 1), Point(1, 3), Point(4, 3)]
    assert not manhattan_path_exists({Point(1, 1), Point(4, 3)}, Point(1, 1), Point(4, 3))
    assert manhattan_path_exists({Point(1, 1), Point(4, 1)}, Point(1, 1), Point(4, 1))
    with pytest.raises(ValueError):
        manhattan_path_exists({Point(1, 1)}, Point(1, 1), Point(2, 2))


@st.composite
def point_sets(draw):
    pts = draw(st.sets(st.tuples(st.integers(1, 6), st.integers(1, 6)), min_size=2, max_size=10))
    return frozenset(Point(*p) for p in pts)


@given(point_sets(), st.data())
@settings(max_examples=200, deadline=None)
def test_manhattan_path_symmetric_and_monotone(Y, data):
    pts = sorted(Y)
    a = data.draw(st.sampled_from(pts))
    b = data.draw(st.sampled_from(pts))
    forward = manhattan_path(Y, a, b)
    backward = manhattan_path(Y, b, a)
    assert (forward is None) == (backward is None)
    assert manhattan_path_exists(Y, a, a)
    if forward is not None:
        xs = [p.x for p in forward]
        ys = [p.y for p in forward]
        assert xs == sorted(xs) or xs == sorted(xs, reverse=True)
        assert ys == sorted(ys) or ys == sorted(ys, reverse=True)
        assert len(set(forward)) == len(forward)
        for p, q in zip(forward, forward[1:]):
            assert p.x == q.x or p.y == q.y


def test_orientation():
    assert orientation(Point(1, 1), Point(2, 2)) == "plus"
    assert orientation(Point(1, 2), Point(2, 1)) == "minus"
    assert orientation(Point(1, 1), Point(1, 5)) is None

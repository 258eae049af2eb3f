import itertools

import pytest

from bstgeo.geometry import FamilySpec, GridFrame, Point, generate, make_permutation_point_set
from bstgeo.rectangulation import (
    CLASS_M,
    CLASS_P,
    ELBOWS_NONE,
    PAIR_DL_UL,
    PAIR_DR_DL,
    PAIR_UL_UR,
    FlipSequence,
    InvalidFlip,
    InvalidRemoval,
    InvalidAOp,
    RectState,
    Segment,
    StateLimitExceeded,
    apply_a_flip,
    apply_a_rotate,
    apply_flip,
    board_from_state,
    enumerate_valid_a_ops,
    enumerate_valid_flips,
    enumerate_valid_removals,
    flip,
    flip_diameter_bfs,
    initial_state,
    is_end_state,
    is_valid_state,
    linear_flip_sequence_neighbor_elbows,
    remove_segment,
    removal,
    replay,
)

S = lambda a, b: Segment.make(Point(*a), Point(*b))


def test_initial_state_smallest():
    s = initial_state(make_permutation_point_set((1,)))
    assert s.segments == {S((1, 0), (1, 1)), S((1, 1), (1, 2))}
    assert not is_valid_state(s)


def test_initial_state_running_example():
    X = make_permutation_point_set((2, 6, 4, 3, 1, 5))
    s = initial_state(X)
    assert len(s.segments) == 12
    assert all(seg.vertical for seg in s.segments)
    assert len(s.points) == 6 + 24
    assert not is_valid_state(s)


def test_valid_state_flags_elbow():
    # a lone corner at the input point: degree two, perpendicular arms
    frame_points = GridFrame(1).margin_points | {Point(1, 1)}
    s = RectState(1, frozenset(frame_points), frozenset({S((1, 0), (1, 1)), S((1, 1), (2, 1))}))
    kinds = [v.kind for v in is_valid_state(s, ELBOWS_NONE)]
    assert kinds == ["elbow"]
    assert is_valid_state(s, CLASS_M) == []  # DR corners allowed there


def test_valid_state_flags_crossing():
    pts = GridFrame(2).margin_points | {Point(2, 2)}
    segs = {S((2, 0), (2, 2)), S((0, 1), (3, 1))}
    bad = is_valid_state(RectState(2, frozenset(pts), frozenset(segs)))
    assert any(v.kind == "crossing" for v in bad)


def test_valid_state_flags_interior_point():
    pts = GridFrame(2).margin_points | {Point(1, 1)}
    segs = {S((0, 1), (3, 1))}  # runs straight through the input point
    bad = is_valid_state(RectState(2, frozenset(pts), frozenset(segs)))
    assert any(v.kind == "segment-points" for v in bad)


def test_apply_flip_n1_walkthrough():
    s = initial_state(make_permutation_point_set((1,)))
    s = apply_flip(s, Point(0, 1), Point(1, 1))
    assert not is_valid_state(s)
    s = apply_flip(s, Point(1, 1), Point(2, 1))
    s = remove_segment(s, S((1, 0), (1, 1)))
    s = remove_segment(s, S((1, 1), (1, 2)))
    assert is_end_state(s)


def test_apply_flip_rejects_crossing():
    s = initial_state(make_permutation_point_set((2, 1)))
    with pytest.raises(InvalidFlip, match="crossing"):
        apply_flip(s, Point(0, 1), Point(3, 1))  # runs through both columns


def test_flip_single_arm_is_fine_at_high_degree():
    s = initial_state(make_permutation_point_set((1,)))
    s = apply_flip(s, Point(0, 1), Point(1, 1))
    board = board_from_state(s)
    assert board.arms(Point(1, 1)) == {"U", "D", "L"}
    assert not is_valid_state(s)


def test_flip_rejects_degenerates():
    s = initial_state(make_permutation_point_set((1,)))
    with pytest.raises(InvalidFlip):
        apply_flip(s, Point(1, 1), Point(1, 1))
    with pytest.raises(InvalidFlip, match="axis-parallel"):
        apply_flip(s, Point(0, 1), Point(1, 2))
    with pytest.raises(InvalidFlip, match="margin"):
        apply_flip(initial_state(make_permutation_point_set((2, 1))), Point(1, 0), Point(2, 0))
    with pytest.raises(InvalidFlip, match="corner"):
        apply_flip(s, Point(0, 0), Point(0, 1))
    s2 = apply_flip(s, Point(0, 1), Point(1, 1))
    with pytest.raises(InvalidFlip, match="crossing"):
        apply_flip(s2, Point(0, 1), Point(1, 1))  # duplicate segment


def test_remove_segment_rules():
    X = make_permutation_point_set((1,))
    s = initial_state(X)
    with pytest.raises(InvalidRemoval):  # would leave the input point dangling
        remove_segment(s, S((1, 0), (1, 1)))
    # under an elbow class the same removal can become legal: build the
    # one-corner state and drop the vertical, leaving a DR elbow
    s2 = apply_flip(s, Point(1, 1), Point(2, 1))
    with pytest.raises(InvalidRemoval, match="elbow"):
        remove_segment(s2, S((1, 1), (1, 2)), ELBOWS_NONE)
    s3 = remove_segment(s2, S((1, 1), (1, 2)), CLASS_M)
    assert not is_valid_state(s3, CLASS_M)


def test_is_end_state_examples():
    X = make_permutation_point_set((2, 1))
    s = initial_state(X)
    assert not is_end_state(s)
    # full horizontal cover, split at the input points
    segs = {
        S((0, 1), (2, 1)), S((2, 1), (3, 1)),
        S((0, 2), (1, 2)), S((1, 2), (3, 2)),
    }
    pts = GridFrame(2).margin_points | X.points
    full = RectState(2, frozenset(pts), frozenset(segs))
    assert is_end_state(full)
    gap = RectState(2, frozenset(pts | {Point(1, 1)}), frozenset(segs - {S((0, 1), (2, 1))} | {S((1, 1), (2, 1))}))
    assert not is_end_state(gap)


def test_enumerate_valid_flips_n1():
    s = initial_state(make_permutation_point_set((1,)))
    flips = enumerate_valid_flips(s)
    assert (Point(0, 1), Point(1, 1)) in flips
    assert (Point(1, 1), Point(2, 1)) in flips
    for a, b in flips:
        apply_flip(s, a, b)  # must all succeed


def test_elbow_monotone_relaxation():
    # a run valid under a smaller elbow set replays under any superset
    X = make_permutation_point_set((3, 1, 2))
    fs = linear_flip_sequence_neighbor_elbows(X, PAIR_DR_DL)
    replay(fs, PAIR_DR_DL, check_each_state=True)
    replay(fs, PAIR_DR_DL | CLASS_M, check_each_state=True)


def test_a_rotate_t_junction():
    s = initial_state(make_permutation_point_set((1,)))
    s = apply_flip(s, Point(0, 1), Point(1, 1))
    # pivot the top stub of the T-junction onto the row
    rotated = apply_a_rotate(s, S((1, 1), (1, 2)), Point(1, 1), Point(2, 1))
    assert rotated.segments == {
        S((1, 0), (1, 1)), S((0, 1), (1, 1)), S((1, 1), (2, 1))
    }
    # replacement parallel to the removed segment is rejected up front
    with pytest.raises(InvalidAOp, match="perpendicular"):
        apply_a_rotate(s, S((1, 1), (1, 2)), Point(1, 1), Point(1, 0))
    # from the bare initial state the same pivot leaves a DR corner
    with pytest.raises(InvalidAOp, match="invalid"):
        apply_a_rotate(
            initial_state(make_permutation_point_set((1,))),
            S((1, 1), (1, 2)),
            Point(1, 1),
            Point(2, 1),
        )


def test_a_flip_n1():
    s = initial_state(make_permutation_point_set((1,)))
    out = apply_a_flip(s, S((1, 0), (1, 1)), S((1, 1), (1, 2)), Point(0, 1), Point(2, 1))
    assert out.segments == {S((0, 1), (1, 1)), S((1, 1), (2, 1))}
    assert is_end_state(out)
    with pytest.raises(InvalidAOp):
        apply_a_flip(s, S((1, 0), (1, 1)), S((1, 1), (1, 2)), Point(1, 0), Point(1, 2))


def test_enumerate_a_ops_matches_apply():
    s = initial_state(make_permutation_point_set((2, 1)))
    ops = enumerate_valid_a_ops(s)
    assert ops, "the initial state admits at least an A-flip"
    for op in ops:
        if op[0] == "arotate":
            apply_a_rotate(s, op[1], op[2], op[3])
        else:
            apply_a_flip(s, op[1], op[2], op[3], op[4])


def test_diameter_n1():
    X = make_permutation_point_set((1,))
    rep = flip_diameter_bfs(X, "flips")
    assert rep.diam == 2
    assert rep.initial_to_end == 2
    rep_a = flip_diameter_bfs(X, "a_ops")
    assert rep_a.initial_to_end == 1
    assert rep.initial_to_end <= 2 * rep_a.diam


def test_diameter_guard():
    X = make_permutation_point_set((1, 2))
    with pytest.raises(StateLimitExceeded):
        flip_diameter_bfs(X, "flips", max_states=10)


def test_linear_elbow_examples():
    assert linear_flip_sequence_neighbor_elbows(make_permutation_point_set((1,))).cost <= 4
    fs = linear_flip_sequence_neighbor_elbows(make_permutation_point_set((2, 1)))
    final = replay(fs, PAIR_DR_DL, check_each_state=True)
    assert board_from_state(final).is_end_state()
    assert fs.cost <= 8


def test_linear_elbow_linear_cost_across_seeds():
    for seed in range(20):
        X = generate(FamilySpec("random", 64, seed))
        fs = linear_flip_sequence_neighbor_elbows(X)
        assert fs.cost <= 4 * 64
        final = replay(fs, PAIR_DR_DL)
        assert board_from_state(final).is_end_state()


def test_linear_elbow_mirrored_pair():
    X = make_permutation_point_set((2, 6, 4, 3, 1, 5))
    fs = linear_flip_sequence_neighbor_elbows(X, PAIR_UL_UR)
    final = replay(fs, PAIR_UL_UR, check_each_state=True)
    assert board_from_state(final).is_end_state()
    with pytest.raises(ValueError, match="vertical-arm"):
        linear_flip_sequence_neighbor_elbows(X, PAIR_DL_UL)
    with pytest.raises(ValueError, match="neighbor"):
        linear_flip_sequence_neighbor_elbows(X, CLASS_P)


def test_replay_reports_step_numbers():
    X = make_permutation_point_set((2, 1))
    fs = FlipSequence(X, (flip(Point(0, 1), Point(3, 1)),))
    with pytest.raises(Exception, match="step 1"):
        replay(fs)

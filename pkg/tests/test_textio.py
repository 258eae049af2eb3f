import pytest

from bstgeo.bst import balanced_bst_trace, validate_trace
from bstgeo.geometry import Point, make_permutation_point_set
from bstgeo.rectangulation import initial_state, enumerate_valid_a_ops, linear_flip_sequence_neighbor_elbows
from bstgeo.satisfied import greedy_sweep
from bstgeo import textio
from bstgeo.treerelax import run_heuristic


def test_permutation_round_trip():
    X = make_permutation_point_set((2, 6, 4, 3, 1, 5))
    assert textio.parse_permutation(textio.format_permutation(X)).seq == X.seq
    with pytest.raises(textio.ParseError, match="line 1"):
        textio.parse_permutation("2,banana,1")


def test_superset_round_trip():
    X = make_permutation_point_set((3, 1, 2))
    Y = greedy_sweep(X)
    text = textio.format_superset(Y)
    assert text.startswith(f"# cost={Y.cost}\n")
    assert textio.parse_superset(text, X).points == Y.points
    with pytest.raises(ValueError, match="missing"):
        textio.parse_superset("1,1\n", X)


def test_point_set_parse_errors_carry_line_numbers():
    with pytest.raises(textio.ParseError, match="line 2"):
        textio.parse_point_set("1,1\n2;3\n")


def test_flip_sequence_round_trip():
    X = make_permutation_point_set((3, 1, 2))
    fs = linear_flip_sequence_neighbor_elbows(X)
    text = textio.format_flip_sequence(fs)
    again = textio.parse_flip_sequence(text)
    assert again == fs
    with pytest.raises(textio.ParseError, match="line 1"):
        textio.parse_flip_sequence("flip 1,1 2,1\n")
    with pytest.raises(textio.ParseError, match="line 3"):
        textio.parse_flip_sequence("X: 2,1\nflip 0,1 2,1\nwobble 1,1 2,1\n")


def test_edge_flip_round_trip():
    X = make_permutation_point_set((2, 6, 4, 3, 1, 5))
    flips = run_heuristic(X, "max_height_drop")
    text = textio.format_edge_flips(X, flips)
    X2, flips2 = textio.parse_edge_flips(text)
    assert X2.seq == X.seq and flips2 == flips
    bad = "X: 2,1\neflip 1,2 2,1\n"
    with pytest.raises(textio.ParseError, match="line 2"):
        textio.parse_edge_flips(bad)


def test_a_op_script_round_trip():
    X = make_permutation_point_set((2, 1))
    ops = enumerate_valid_a_ops(initial_state(X))[:3]
    text = textio.format_a_ops(X, ops)
    X2, ops2 = textio.parse_a_ops(text)
    assert X2.seq == X.seq and ops2 == ops


def test_tree_and_trace_round_trip():
    X = make_permutation_point_set((2, 6, 4, 3, 1, 5))
    trace = balanced_bst_trace(X)
    text = textio.format_bst_trace(trace)
    again = textio.parse_bst_trace(text)
    assert again.initial_tree.root == trace.initial_tree.root
    assert again.episodes == trace.episodes
    assert validate_trace(again, X) == trace.cost


def test_tree_parse_errors():
    with pytest.raises(textio.ParseError):
        textio.parse_tree("(. 1")
    with pytest.raises(textio.ParseError, match="symmetric"):
        textio.parse_tree("((. 2 .) 1 .)")

import io
import sys

import pytest

from bstgeo.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_bit_reversal(capsys):
    code, out, _ = run_cli(["gen", "--family", "bit_reversal", "--n", "8"], capsys)
    assert code == 0
    assert out == "1,5,3,7,2,6,4,8\n"


def test_gen_is_byte_identical(capsys):
    a = run_cli(["gen", "--family", "random", "--n", "12", "--seed", "5"], capsys)
    b = run_cli(["gen", "--family", "random", "--n", "12", "--seed", "5"], capsys)
    assert a == b


def test_trace_then_replay_round_trips(tmp_path, capsys):
    for model, extra in (
        ("linear-elbow", ["--elbows", "DR+DL"]),
        ("heuristic", ["--policy", "max_depth_gain"]),
    ):
        code, out, _ = run_cli(
            ["trace", "--model", model, "--perm", "2,6,4,3,1,5", *extra], capsys
        )
        assert code == 0
        f = tmp_path / "run.txt"
        f.write_text(out)
        args = ["replay", "--input", str(f)]
        if model == "linear-elbow":
            args += ["--elbows", "DR+DL", "--check-states"]
        code, out2, _ = run_cli(args, capsys)
        assert code == 0
        assert "cost=" in out2
        if model == "linear-elbow":
            assert "end_state=true" in out2
        else:
            assert "reached_path=true" in out2


def test_transform_pipeline(tmp_path, capsys):
    code, y_text, _ = run_cli(["trace", "--model", "greedy", "--perm", "3,1,2"], capsys)
    assert code == 0
    y_file = tmp_path / "y.txt"
    y_file.write_text(y_text)
    code, fs_text, _ = run_cli(
        ["transform", "--kind", "sat-to-rect", "--perm", "3,1,2", "--input", str(y_file)],
        capsys,
    )
    assert code == 0
    fs_file = tmp_path / "fs.txt"
    fs_file.write_text(fs_text)
    code, back, _ = run_cli(
        ["transform", "--kind", "rect-to-sat", "--input", str(fs_file)], capsys
    )
    assert code == 0
    assert back == y_text  # exact round trip, including the cost header


def test_tree_to_rect_pipeline(tmp_path, capsys):
    code, ef_text, _ = run_cli(
        ["trace", "--model", "heuristic", "--perm", "2,6,4,3,1,5"], capsys
    )
    f = tmp_path / "ef.txt"
    f.write_text(ef_text)
    code, fs_text, _ = run_cli(["transform", "--kind", "tree-to-rect", "--input", str(f)], capsys)
    assert code == 0
    fs_file = tmp_path / "fs.txt"
    fs_file.write_text(fs_text)
    code, out, _ = run_cli(["replay", "--input", str(fs_file), "--check-states"], capsys)
    assert code == 0 and "end_state=true" in out


def test_static_bst_trace_emits_valid_grammar(capsys):
    code, out, _ = run_cli(["trace", "--model", "static-bst", "--perm", "3,1,2"], capsys)
    assert code == 0
    assert out.startswith("tree: ")
    from bstgeo import textio
    from bstgeo.bst import validate_trace
    from bstgeo.geometry import make_permutation_point_set

    trace = textio.parse_bst_trace(out)
    assert validate_trace(trace, make_permutation_point_set((3, 1, 2))) == trace.cost


def test_bounds_output(capsys):
    code, out, _ = run_cli(["bounds", "--perm", "2,1", "--oracles"], capsys)
    assert code == 0
    table = dict(line.split("\t") for line in out.strip().splitlines())
    assert table["mir"] == "5/2"
    assert table["opt_m"] == "3"
    assert table["opt_s"] == "3"


def test_bounds_limit_is_usage_error(capsys):
    code, _, err = run_cli(
        ["bounds", "--perm", "6,5,4,3,2,1", "--oracles", "--opt-limit", "5"], capsys
    )
    assert code == 2
    assert "--opt-limit" in err


def test_diameter_output(capsys):
    code, out, _ = run_cli(["diameter", "--perm", "1", "--mode", "flips"], capsys)
    assert code == 0
    assert out.strip() == "diam=2 states=7 initial_to_end=2"


def test_replay_detects_bad_sequence(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("X: 2,1\nflip 0,1 3,1\n")
    code, _, err = run_cli(["replay", "--input", str(f)], capsys)
    assert code == 1
    assert "verification failed" in err


def test_unparseable_input_is_usage_error(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("X: 2,1\nflip zero,one 3,1\n")
    code, _, err = run_cli(["replay", "--input", str(f)], capsys)
    assert code == 2
    assert "line 2" in err


def test_experiment_tsv(capsys):
    code, out, _ = run_cli(
        [
            "experiment",
            "--quantity", "greedy_cost",
            "--families", "sequential,random",
            "--sizes", "4,8",
            "--seeds", "2",
        ],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n\tfamily\tseed\tquantity\tvalue"
    assert len(lines) == 1 + 2 + 4  # sequential once per size, random twice
    assert "4\tsequential\t0\tgreedy_cost\t7" in lines


def test_aop_transform(tmp_path, capsys):
    f = tmp_path / "aops.txt"
    f.write_text("X: 1\naflip 1,0 1,1 1,2 0,1 2,1\n")
    code, out, _ = run_cli(["transform", "--kind", "aop-to-flips", "--input", str(f)], capsys)
    assert code == 0
    fs_file = tmp_path / "fs.txt"
    fs_file.write_text(out)
    code, out2, _ = run_cli(["replay", "--input", str(fs_file), "--check-states"], capsys)
    assert code == 0 and "cost=2 end_state=true" in out2

"""Command-line front end.

Exit status: 0 on success, 1 when a verification or assertion fails,
2 on usage errors (bad flags, unparseable input, exceeded oracle limits).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bounds as bounds_mod
from . import experiments, textio, transforms
from .bst import TraceError, balanced_bst_trace, validate_trace
from .geometry import FAMILIES, FamilySpec, PermutationPointSet, generate
from .rectangulation import (
    ELBOW_PRESETS,
    RectError,
    StateLimitExceeded,
    flip_diameter_bfs,
    initial_state,
    linear_flip_sequence_neighbor_elbows,
    replay,
)
from .satisfied import Sign, brute_force_opt, greedy_sweep, signed_greedy
from .treerelax import POLICIES, run_heuristic

TREE_GRAMMAR = """\
Trace file grammar (bit-exact):
  line 1:  tree: <shape>     shape := "." | "(" <shape> <key> <shape> ")"
  line 2+: one episode per line, ops separated by single spaces:
           L (moveleft)  R (moveright)  U (moveup)  rot (rotate)
           an empty line is an empty episode.
Flip sequence files:  "X: <comma permutation>" then "flip x,y x,y" or
"remove x,y x,y" per line.  Edge-flip files: same header then
"eflip x,y x,y".  A-op scripts: same header then
"arotate p q pivot far" / "aflip e1 shared e2 v w" with points as x,y."""


class UsageError(Exception):
    pass


def _load_input(args) -> PermutationPointSet:
    given = [bool(args.perm), bool(getattr(args, "family", None))]
    if sum(given) != 1:
        raise UsageError("provide exactly one of --perm or --family")
    if args.perm:
        return textio.parse_permutation(args.perm)
    return generate(FamilySpec(args.family, args.n, args.seed))


def _add_input_flags(p: argparse.ArgumentParser, with_n: bool = True) -> None:
    p.add_argument("--perm", help="comma-separated permutation, e.g. 2,6,4,3,1,5")
    p.add_argument("--family", choices=FAMILIES, help="generate the input instead")
    if with_n:
        p.add_argument("--n", type=int, default=8, help="size for --family")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized families")


def _read(path: str) -> str:
    return Path(path).read_text()


def cmd_gen(args) -> int:
    spec = FamilySpec(args.family, args.n, args.seed)
    print(textio.format_permutation(generate(spec)))
    return 0


def cmd_trace(args) -> int:
    X = _load_input(args)
    sign = Sign(args.sign)
    if args.model == "greedy":
        out = textio.format_superset(greedy_sweep(X, sign))
    elif args.model == "signed-greedy":
        out = textio.format_superset(signed_greedy(X))
    elif args.model == "gkks":
        out = textio.format_superset(bounds_mod.gkks_network(X))
    elif args.model == "heuristic":
        out = textio.format_edge_flips(X, run_heuristic(X, args.policy, args.seed))
    elif args.model == "static-bst":
        out = textio.format_bst_trace(balanced_bst_trace(X))
    else:  # linear-elbow
        out = textio.format_flip_sequence(
            linear_flip_sequence_neighbor_elbows(X, ELBOW_PRESETS[args.elbows])
        )
    sys.stdout.write(out)
    return 0


def cmd_transform(args) -> int:
    text = _read(args.input)
    elbows = ELBOW_PRESETS[args.elbows]
    if args.kind == "rect-to-sat":
        fs = textio.parse_flip_sequence(text)
        sys.stdout.write(textio.format_superset(transforms.rect_to_satisfied(fs, elbows)))
    elif args.kind == "sat-to-rect":
        X = _load_input(args)
        Y = textio.parse_superset(text, X)
        sys.stdout.write(
            textio.format_flip_sequence(transforms.satisfied_to_rect(X, Y, elbows))
        )
    elif args.kind == "tree-to-rect":
        X, flips = textio.parse_edge_flips(text)
        sys.stdout.write(
            textio.format_flip_sequence(transforms.treerelax_to_rect(X, flips))
        )
    else:  # aop-to-flips
        X, ops = textio.parse_a_ops(text)
        state = initial_state(X)
        steps: list = []
        for op in ops:
            new_steps, state = transforms.a_op_to_flips(state, op)
            steps.extend(new_steps)
        from .rectangulation import FlipSequence

        sys.stdout.write(textio.format_flip_sequence(FlipSequence(X, tuple(steps))))
    return 0


def cmd_replay(args) -> int:
    text = _read(args.input)
    if text.startswith("tree:"):
        raise UsageError(
            "BST trace files carry no access sequence; replay handles flip and edge-flip files"
        )
    body = [l for l in text.splitlines()[1:] if l.strip() and not l.startswith("#")]
    if body and body[0].split()[0] == "eflip":
        X, flips = textio.parse_edge_flips(text)  # parsing replays and validates
        print(f"cost={len(flips)} reached_path=true")
        return 0
    fs = textio.parse_flip_sequence(text)
    final = replay(fs, ELBOW_PRESETS[args.elbows], check_each_state=args.check_states)
    from .rectangulation import board_from_state

    end = board_from_state(final).is_end_state()
    print(f"cost={fs.cost} end_state={'true' if end else 'false'}")
    return 0


def cmd_bounds(args) -> int:
    X = _load_input(args)
    lines = []
    iset = bounds_mod.max_independent_rectangles(X, Sign.BOTH, "exact", args.mis_limit)
    m = bounds_mod.mir(X, args.mis_limit)
    lines.append(("i_both", iset.size))
    lines.append(("i_plus", bounds_mod.max_independent_rectangles(X, Sign.PLUS, "exact", args.mis_limit).size))
    lines.append(("i_minus", bounds_mod.max_independent_rectangles(X, Sign.MINUS, "exact", args.mis_limit).size))
    lines.append(("mir", m.mir))
    if args.oracles:
        if X.n > args.opt_limit:
            raise UsageError(f"n={X.n} exceeds --opt-limit={args.opt_limit}")
        for name, sign in (("opt_s", Sign.BOTH), ("opt_s_plus", Sign.PLUS), ("opt_s_minus", Sign.MINUS)):
            lines.append((name, brute_force_opt(X, sign, "satisfaction", args.opt_limit).optimum))
        lines.append(("opt_m", brute_force_opt(X, Sign.BOTH, "manhattan-network", args.opt_limit).optimum))
    for name, value in lines:
        print(f"{name}\t{value}")
    return 0


def cmd_diameter(args) -> int:
    X = _load_input(args)
    if X.n > 3:
        raise UsageError(f"n={X.n} exceeds the diameter search bound; use n <= 3")
    try:
        report = flip_diameter_bfs(X, args.mode, args.max_states)
    except StateLimitExceeded as exc:
        raise UsageError(f"{exc}; raise --max-states") from exc
    print(f"diam={report.diam} states={report.state_count} initial_to_end={report.initial_to_end}")
    return 0


def cmd_experiment(args) -> int:
    spec = experiments.ExperimentSpec(
        args.quantity,
        tuple(args.families.split(",")),
        tuple(int(s) for s in args.sizes.split(",")),
        args.seeds,
        args.policy,
    )
    sys.stdout.write(experiments.format_tsv(experiments.run_experiment(spec)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bstgeo",
        description="Models and transforms for the dynamic BST problem on permutations.",
        epilog=TREE_GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a permutation from a named family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("trace", help="run a model and emit its trace/output")
    p.add_argument(
        "--model",
        required=True,
        choices=["greedy", "signed-greedy", "heuristic", "gkks", "static-bst", "linear-elbow"],
    )
    _add_input_flags(p)
    p.add_argument("--sign", choices=["plus", "minus", "both"], default="both")
    p.add_argument("--policy", choices=POLICIES, default="max_height_drop")
    p.add_argument("--elbows", choices=sorted(ELBOW_PRESETS), default="DR+DL")
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("transform", help="convert between model outputs")
    p.add_argument(
        "--kind", required=True, choices=["rect-to-sat", "sat-to-rect", "tree-to-rect", "aop-to-flips"]
    )
    p.add_argument("--input", required=True, help="input file (see --help epilog for formats)")
    _add_input_flags(p)
    p.add_argument("--elbows", choices=sorted(ELBOW_PRESETS), default="none")
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("replay", help="verify a flip or edge-flip file and print its cost")
    p.add_argument("--input", required=True)
    p.add_argument("--elbows", choices=sorted(ELBOW_PRESETS), default="none")
    p.add_argument("--check-states", action="store_true", help="run the full validator per step")
    p.set_defaults(fn=cmd_replay)

    p = sub.add_parser("bounds", help="independent-rectangle bounds and optimum oracles")
    _add_input_flags(p)
    p.add_argument("--oracles", action="store_true", help="also run the brute-force optima")
    p.add_argument("--opt-limit", type=int, default=5, help="max n for brute-force optima")
    p.add_argument("--mis-limit", type=int, default=24, help="max rectangles for exact MIS")
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("diameter", help="exact flip diameter by exhaustive search")
    _add_input_flags(p)
    p.add_argument("--mode", choices=["flips", "a_ops"], default="flips")
    p.add_argument("--max-states", type=int, default=50_000)
    p.set_defaults(fn=cmd_diameter)

    p = sub.add_parser("experiment", help="growth-curve sweep, TSV on stdout")
    p.add_argument("--quantity", required=True, choices=experiments.QUANTITIES)
    p.add_argument("--families", required=True, help="comma-separated family names")
    p.add_argument("--sizes", required=True, help="comma-separated ascending sizes")
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--policy", choices=POLICIES, default="max_height_drop")
    p.set_defaults(fn=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (TraceError, RectError, AssertionError) as exc:
        # TraceError/RectError subclass ValueError, so these come first
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

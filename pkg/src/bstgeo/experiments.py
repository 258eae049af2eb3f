"""Growth-curve experiments: one measured quantity swept over families,
sizes and seeds, emitted as TSV."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .bst import balanced_bst_trace
from .bounds import gkks_network
from .geometry import FAMILIES, FamilySpec, PermutationPointSet, generate
from .rectangulation import linear_flip_sequence_neighbor_elbows
from .satisfied import Sign, greedy_sweep, signed_greedy
from .treerelax import POLICIES, run_heuristic

DETERMINISTIC_FAMILIES = ("sequential", "bit_reversal")

QUANTITIES = (
    "greedy_cost",
    "signed_greedy_cost",
    "gkks_size",
    "heuristic_flips",
    "static_bst_cost",
    "linear_elbow_cost",
)


def measure(quantity: str, X: PermutationPointSet, policy: str = "max_height_drop", seed: int = 0) -> int:
    if quantity == "greedy_cost":
        return greedy_sweep(X, Sign.BOTH).cost
    if quantity == "signed_greedy_cost":
        return signed_greedy(X).cost
    if quantity == "gkks_size":
        return gkks_network(X).cost
    if quantity == "heuristic_flips":
        return len(run_heuristic(X, policy, seed))
    if quantity == "static_bst_cost":
        return balanced_bst_trace(X).cost
    if quantity == "linear_elbow_cost":
        return linear_flip_sequence_neighbor_elbows(X).cost
    raise ValueError(f"unknown quantity {quantity!r}")


@dataclass(frozen=True)
class ExperimentSpec:
    quantity: str
    families: tuple[str, ...]
    sizes: tuple[int, ...]
    seeds: int = 1
    policy: str = "max_height_drop"

    def __post_init__(self) -> None:
        if self.quantity not in QUANTITIES:
            raise ValueError(f"unknown quantity {self.quantity!r}")
        for fam in self.families:
            if fam not in FAMILIES:
                raise ValueError(f"unknown family {fam!r}")
        if list(self.sizes) != sorted(self.sizes):
            raise ValueError("sizes must be ascending")
        if self.seeds < 1:
            raise ValueError("seeds must be at least 1")
        if self.policy not in POLICIES:
            raise ValueError(f"unknown policy {self.policy!r}")


@dataclass(frozen=True)
class Row:
    n: int
    family: str
    seed: int
    quantity: str
    value: int


def run_experiment(spec: ExperimentSpec) -> list[Row]:
    rows = []
    for family in spec.families:
        seeds = (0,) if family in DETERMINISTIC_FAMILIES else tuple(range(spec.seeds))
        for n in spec.sizes:
            for seed in seeds:
                X = generate(FamilySpec(family, n, seed))
                value = measure(spec.quantity, X, spec.policy, seed)
                rows.append(Row(n, family, seed, spec.quantity, value))
    rows.sort(key=lambda r: (r.n, r.family, r.seed))
    return rows


def format_tsv(rows: list[Row]) -> str:
    lines = ["n\tfamily\tseed\tquantity\tvalue"]
    lines += [f"{r.n}\t{r.family}\t{r.seed}\t{r.quantity}\t{r.value}" for r in rows]
    return "\n".join(lines) + "\n"

"""Round trips between the models.

A satisfied superset drives a flip run that completes rows between its
points; collecting the non-margin flip endpoints of any finished run gives
a satisfied superset back.  A tree relaxation compiles to a flip run with
two flips per edge-flip plus linear overhead.
Run: python3 demos/04_model_transforms.py
"""
from bstgeo import (
    greedy_sweep,
    is_satisfied,
    make_permutation_point_set,
    rect_to_satisfied,
    run_heuristic,
    satisfied_to_rect,
    treerelax_to_rect,
)
from bstgeo.textio import format_flip_sequence

X = make_permutation_point_set((2, 1))
Y = greedy_sweep(X)
fs = satisfied_to_rect(X, Y)
print(f"superset of size {Y.cost} -> {fs.cost} flips "
      f"(bound: 2|Y| = {2 * Y.cost})")
print(format_flip_sequence(fs))

back = rect_to_satisfied(fs)
print("endpoints recover the superset exactly:", back.points == Y.points)

X6 = make_permutation_point_set((2, 6, 4, 3, 1, 5))
ef = run_heuristic(X6, "max_height_drop")
fs6 = treerelax_to_rect(X6, ef)
print(f"\n{len(ef)} edge-flips -> {fs6.cost} flips "
      f"(bound: 2|ef| + 4n = {2 * len(ef) + 4 * X6.n})")
Y6 = rect_to_satisfied(fs6)
print(f"collected superset has {Y6.cost} points; satisfied: "
      f"{is_satisfied(Y6.points)}")

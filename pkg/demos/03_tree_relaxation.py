"""Relaxing the treap into the time path, one edge-flip at a time.

Each flip hangs the upper of two x-adjacent siblings under the lower one.
Total edge height falls by at least one per flip, so the walk always
terminates at the path.  Run: python3 demos/03_tree_relaxation.py
"""
from bstgeo import (
    apply_edge_flip,
    build_path,
    build_treap,
    make_permutation_point_set,
    potentials,
    run_heuristic,
    valid_edge_flips,
)

X = make_permutation_point_set((2, 6, 4, 3, 1, 5))
T = build_treap(X)
print("treap edges (parent -> child, by value):")
for child, parent in sorted(T.parent, key=lambda cp: cp[1]):
    print(f"  {parent.x} -> {child.x}")

print("\nrelaxation under the max-height-drop policy:")
for f in run_heuristic(X, "max_height_drop"):
    T = apply_edge_flip(T, f)
    rep = potentials(T)
    print(f"  hang {f.b.x} under {f.a.x} (was under {f.r.x}): "
          f"h={rep.h_total} w={rep.w_total} depth_sum={rep.depth_sum}")
print("ends at the path:", T.is_path())

path = build_path(X)
print("\npath potentials:", potentials(path))
print("no flips available at the path:", valid_edge_flips(path) == [])

# policies can disagree about the route but all land on the path
for policy in ("max_height_drop", "max_width_gain", "max_depth_gain", "random"):
    flips = run_heuristic(X, policy)
    print(f"{policy:16s} {len(flips)} flips: "
          + " ".join(f"{f.a.x}<-{f.b.x}" for f in flips))

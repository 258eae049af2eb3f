"""Independent empty rectangles and small manhattan networks.

Half the maximum number of pairwise independent empty rectangles, plus n,
lower-bounds the cheapest manhattan network over the input pairs, which in
turn lower-bounds every satisfied superset.  The median-split construction
gives an n log n upper bound from the other side.
Run: python3 demos/05_bounds_and_networks.py
"""
from bstgeo import (
    Sign,
    brute_force_opt,
    gkks_network,
    is_manhattan_network,
    make_permutation_point_set,
    max_independent_rectangles,
    mir,
    signed_greedy,
    unsatisfied_rectangles,
    verify_signed_mn_lower_bound,
)

X = make_permutation_point_set((3, 1, 4, 2))
rects = unsatisfied_rectangles(X)
print(f"{len(rects)} unsatisfied rectangles:")
for r in rects:
    print(f"  {r.a}-{r.b}  ({r.sign}, width {r.width})")

best = max_independent_rectangles(X)
print(f"\nmaximum independent set: {best.size} (certified: {best.exact})")
print("independent-rectangle bound:", mir(X).mir)

print("\nbrute-force optima:")
for name, sign, predicate in (
    ("satisfied superset", Sign.BOTH, "satisfaction"),
    ("manhattan network ", Sign.BOTH, "manhattan-network"),
):
    rep = brute_force_opt(X, sign, predicate)
    print(f"  {name}: {rep.optimum}")

report = verify_signed_mn_lower_bound(X)
print(f"signed network optima: plus {report.opt_plus.optimum}, "
      f"minus {report.opt_minus.optimum} "
      f"(rectangle bounds {X.n}+{report.i_plus}, {X.n}+{report.i_minus})")

Y = gkks_network(X)
print(f"\nmedian-split network: {Y.cost} points, valid: "
      f"{is_manhattan_network(X, Y.points)}")
print(f"signed-sweep union:   {signed_greedy(X).cost} points, valid: "
      f"{is_manhattan_network(X, signed_greedy(X).points)}")

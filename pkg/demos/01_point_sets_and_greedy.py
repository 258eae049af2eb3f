"""A permutation as a point set, and the greedy repair sweep.

The access sequence (2,6,4,3,1,5) becomes six planar points (value, time).
A set is satisfied when every tilted pair's rectangle holds a third point;
the sweep walks time bottom-up and patches each new point against what is
already there.  Run: python3 demos/01_point_sets_and_greedy.py
"""
from bstgeo import Sign, brute_force_opt, greedy_sweep, make_permutation_point_set, signed_greedy

X = make_permutation_point_set((2, 6, 4, 3, 1, 5))
print("input points (x=value, y=time):", sorted(X.points))

Y = greedy_sweep(X)
print(f"\ngreedy superset, cost {Y.cost}:")
for y in range(X.n, 0, -1):
    row = "".join(
        "X" if (x, y) in X.points else "o" if (x, y) in Y.extra else "."
        for x in range(1, X.n + 1)
    )
    print(f"  t={y}  {row}")

plus, minus = greedy_sweep(X, Sign.PLUS), greedy_sweep(X, Sign.MINUS)
union = signed_greedy(X)
print(f"\nsigned sweeps: plus {plus.cost}, minus {minus.cost}, union {union.cost}")

# at desk scale we can certify the sweeps against exhaustive search
small = make_permutation_point_set((3, 1, 4, 2))
for sign in (Sign.PLUS, Sign.MINUS):
    g = greedy_sweep(small, sign).cost
    opt = brute_force_opt(small, sign)
    print(f"(3,1,4,2) {sign.value}: greedy {g} == optimum {opt.optimum} "
          f"({opt.enumerated} candidate sets examined)")

"""Flipping the all-vertical rectangulation to the all-horizontal one.

Every input point starts with two vertical segments through it.  A flip
adds one axis-parallel segment (splitting whatever it lands on); removals
are free but must not leave forbidden corners.  Run:
python3 demos/02_rectangulation_flips.py
"""
from bstgeo import (
    Point,
    Segment,
    apply_flip,
    enumerate_valid_flips,
    enumerate_valid_removals,
    initial_state,
    is_end_state,
    make_permutation_point_set,
    remove_segment,
)

S = lambda a, b: Segment.make(Point(*a), Point(*b))

X = make_permutation_point_set((2, 1))
state = initial_state(X)
print("initial segments:", sorted(state.segments))
print("valid flips now:", enumerate_valid_flips(state))

# complete row 2 and start row 1
for a, b in [
    (Point(2, 1), Point(3, 1)),
    (Point(0, 2), Point(1, 2)),
    (Point(1, 2), Point(2, 2)),
    (Point(2, 2), Point(3, 2)),
]:
    state = apply_flip(state, a, b)
    print(f"flip <{a},{b}>: {len(state.segments)} segments")

print("removable segments:", enumerate_valid_removals(state))

# row 2 is done, so the column under its point can go; that unblocks the
# final flip of row 1, and then every remaining vertical drains away
for seg in (S((1, 0), (1, 2)), S((1, 2), (1, 3))):
    state = remove_segment(state, seg)
state = apply_flip(state, Point(0, 1), Point(2, 1))
for seg in (
    S((2, 0), (2, 1)),
    S((2, 1), (2, 2)),
    S((2, 2), (2, 3)),
):
    state = remove_segment(state, seg)
print("end state reached:", is_end_state(state))
print("final segments:", sorted(state.segments))

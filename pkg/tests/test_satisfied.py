import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bstgeo.geometry import Point, make_permutation_point_set
from bstgeo.satisfied import (
    Sign,
    brute_force_opt,
    greedy_sweep,
    greedy_sweep_reference,
    is_satisfied,
    signed_greedy,
)


def P(*pairs):
    return {Point(x, y) for x, y in pairs}


def all_perms(max_n):
    for n in range(1, max_n + 1):
        yield from itertools.permutations(range(1, n + 1))


def test_is_satisfied_examples():
    assert not is_satisfied(P((1, 1), (2, 2)), Sign.BOTH)
    assert is_satisfied(P((1, 1), (2, 2)), Sign.MINUS)  # only a plus pair exists
    assert is_satisfied(P((2, 1), (1, 2), (2, 2)), Sign.BOTH)


def test_greedy_examples():
    X = make_permutation_point_set((2, 1))
    assert greedy_sweep(X, Sign.BOTH).points == P((2, 1), (1, 2), (2, 2))
    assert greedy_sweep(X, Sign.PLUS).points == P((2, 1), (1, 2))
    for n in (3, 6, 17):
        Xs = make_permutation_point_set(tuple(range(1, n + 1)))
        out = greedy_sweep(Xs, Sign.BOTH)
        assert out.cost == 2 * n - 1
        assert out.extra == frozenset(Point(i, i + 1) for i in range(1, n))


def test_greedy_passes_own_predicate():
    for perm in all_perms(4):
        X = make_permutation_point_set(perm)
        for sign in Sign:
            assert is_satisfied(greedy_sweep(X, sign).points, sign), (perm, sign)


def test_greedy_matches_literal_rule_exhaustive():
    for perm in all_perms(4):
        X = make_permutation_point_set(perm)
        for sign in Sign:
            assert greedy_sweep(X, sign).points == greedy_sweep_reference(X, sign).points


@given(st.permutations(list(range(1, 8))), st.sampled_from(list(Sign)))
@settings(max_examples=60, deadline=None)
def test_greedy_matches_literal_rule_random(perm, sign):
    X = make_permutation_point_set(tuple(perm))
    assert greedy_sweep(X, sign).points == greedy_sweep_reference(X, sign).points


def test_greedy_reproducible():
    X = make_permutation_point_set((4, 2, 5, 1, 3))
    assert greedy_sweep(X).points == greedy_sweep(X).points


def test_signed_greedy_examples():
    assert signed_greedy(make_permutation_point_set((1,))).cost == 1
    assert signed_greedy(make_permutation_point_set((2, 1))).points == P(
        (2, 1), (1, 2), (2, 2)
    )
    for n in (4, 16):
        X = make_permutation_point_set(tuple(range(1, n + 1)))
        assert signed_greedy(X).cost <= 2 * n


def test_brute_force_examples():
    assert brute_force_opt(make_permutation_point_set((1, 2)), Sign.BOTH).optimum == 3
    assert brute_force_opt(make_permutation_point_set((1,))).optimum == 1
    assert brute_force_opt(make_permutation_point_set((2, 1)), Sign.PLUS).optimum == 2


def test_brute_force_witness_passes():
    X = make_permutation_point_set((3, 1, 2))
    report = brute_force_opt(X, Sign.BOTH)
    assert is_satisfied(report.witness.points, Sign.BOTH)
    assert report.witness.cost == report.optimum
    assert report.enumerated >= 1


def test_brute_force_limit():
    X = make_permutation_point_set((6, 5, 4, 3, 2, 1))
    with pytest.raises(ValueError, match="limit"):
        brute_force_opt(X)


def test_signed_optima_bounded_by_unsigned():
    for perm in all_perms(4):
        X = make_permutation_point_set(perm)
        both = brute_force_opt(X, Sign.BOTH).optimum
        assert brute_force_opt(X, Sign.PLUS).optimum <= both
        assert brute_force_opt(X, Sign.MINUS).optimum <= both

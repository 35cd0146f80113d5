import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from koszul.signs import (
    antisym_sort_sign,
    koszul_sign,
    merge_sign,
    sort_sign,
    unshuffle_sign,
)


def test_identity_permutation_any_degrees():
    assert koszul_sign([1, 2, 3], [0, 1, 5]) == 1
    assert koszul_sign([1], [7]) == 1


def test_swap_even_even():
    # (|v2|+1)(|v1|+1) = 1*1 odd
    assert koszul_sign([2, 1], [0, 0]) == -1


def test_swap_odd_even():
    # (|v2|+1)(|v1|+1) = 1*2 even
    assert koszul_sign([2, 1], [1, 0]) == 1


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        koszul_sign([1, 1], [0, 0])


def _sign_by_adjacent_swaps(perm, degrees):
    """Independent oracle: realize the permutation by adjacent transpositions."""
    current = list(range(1, len(perm) + 1))
    sign = 1
    target = list(perm)
    # selection sort to transform current into target by adjacent swaps
    for i in range(len(target)):
        j = current.index(target[i])
        while j > i:
            a, b = current[j - 1], current[j]
            exp = (degrees[a - 1] + 1) * (degrees[b - 1] + 1)
            if exp % 2:
                sign = -sign
            current[j - 1], current[j] = current[j], current[j - 1]
            j -= 1
    return sign


def test_matches_adjacent_swap_oracle_s3():
    for perm in itertools.permutations([1, 2, 3]):
        for degs in itertools.product([0, 1], repeat=3):
            assert koszul_sign(perm, list(degs)) == _sign_by_adjacent_swaps(perm, degs)


def test_multiplicative_on_s3():
    # sgn(sigma tau) = sgn(sigma on permuted degrees) * sgn(tau)
    for sigma in itertools.permutations([1, 2, 3]):
        for tau in itertools.permutations([1, 2, 3]):
            for degs in itertools.product([0, 1], repeat=3):
                comp = tuple(tau[s - 1] for s in sigma)
                permuted = [degs[t - 1] for t in tau]
                lhs = koszul_sign(comp, list(degs))
                rhs = koszul_sign(sigma, permuted) * koszul_sign(tau, list(degs))
                assert lhs == rhs, (sigma, tau, degs)


@given(st.permutations(list(range(1, 6))),
       st.lists(st.integers(min_value=-2, max_value=3), min_size=5, max_size=5))
def test_matches_oracle_random(perm, degs):
    assert koszul_sign(perm, degs) == _sign_by_adjacent_swaps(perm, degs)


def test_sort_sign_basic():
    sign, keys, degs = sort_sign([2, 1], [1, 1])
    assert sign == -1 and keys == [1, 2]
    sign, keys, _ = sort_sign([2, 1], [1, 0])
    assert sign == 1 and keys == [1, 2]


def test_antisym_sort_sign():
    # even-even swap: -(-1)^0 = -1
    assert antisym_sort_sign([2, 1], [0, 0])[0] == -1
    # odd-odd swap: -(-1)^1 = +1
    assert antisym_sort_sign([2, 1], [1, 1])[0] == 1


def test_merge_and_unshuffle_agree_with_sort():
    keys_l, degs_l = [1, 3], [1, 1]
    keys_r, degs_r = [2, 4], [1, 0]
    sign = merge_sign(degs_l, keys_l, degs_r, keys_r)
    expected, _, _ = sort_sign(keys_l + keys_r, degs_l + degs_r)
    assert sign == expected


def test_unshuffle_sign_example():
    # pull position 1 of (a,b,c) to front past a: odd*odd
    assert unshuffle_sign([1, 1, 0], (1,)) == -1
    assert unshuffle_sign([1, 1, 0], (0, 2)) == 1


def test_scalar_field_axioms_seeded():
    import random
    rng = random.Random(20240811)
    for _ in range(200):
        a = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        b = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        c = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if a != 0:
            assert a * (1 / a) == 1
        assert a + (-a) == 0

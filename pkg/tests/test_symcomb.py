import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from uniformizer.symcomb import (MAX_ENUM_WEIGHT, TooManyParts, WeightCapExceeded, WeightMismatch,
                                 automorphisms, cycle_digraphs, d_closed_form, d_coeff, digraph_sign,
                                 enumerate_tilings, eta, eta_single_cycle_closed_form, is_repeat_of,
                                 oracle_psi_expansion, partitions_of, primitive_types, psi_expansion,
                                 scale_partition)


@pytest.mark.parametrize("args, kwargs, expected", [
    ((4, 4), {}, [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]),
    ((4, 2), {"num_parts": 2}, [(2, 2)]),
    ((3, 1), {}, [(1, 1, 1)]),
    ((5, 3), {"num_parts": 1}, []),
])
def test_partitions_of(args, kwargs, expected):
    assert partitions_of(*args, **kwargs) == expected


def test_partition_counts():
    # p(n) for n = 1..12
    assert [len(partitions_of(n)) for n in range(1, 13)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


@pytest.mark.parametrize("lam, k, mode, expected", [
    ((2, 1), 3, "multiply_parts", (6, 3)),
    ((2, 1), 3, "repeat", (2, 2, 2, 1, 1, 1)),
    ((1,), 1, "multiply_parts", (1,)),
    ((1,), 1, "repeat", (1,)),
])
def test_scale_partition(lam, k, mode, expected):
    assert scale_partition(lam, k, mode) == expected


def test_is_repeat_of():
    assert is_repeat_of((2, 2, 1, 1), 2)
    assert not is_repeat_of((2, 1, 1), 2)


def test_digraph_sign():
    assert digraph_sign((3,)) == 1
    assert digraph_sign((2,)) == -1
    assert digraph_sign((2, 1)) == -1
    assert cycle_digraphs(3) == [(3,), (2, 1), (1, 1, 1)]


def _brute_tilings_of_cycle(length, lam):
    """Count cut sets on a labelled cycle whose arcs have sizes lam."""
    count = 0
    for k in range(1, length + 1):
        for cuts in itertools.combinations(range(length), k):
            sizes = [(cuts[(i + 1) % k] - cuts[i]) % length or length for i in range(k)]
            if Counter(sizes) == Counter(lam):
                count += 1
    return count


@pytest.mark.parametrize("cycles, lam, expected", [
    ((3,), (3,), 3),
    ((2,), (1, 1), 1),
    ((1,), (1,), 1),
    ((4,), (2, 2), 2),
])
def test_enumerate_tilings_examples(cycles, lam, expected):
    assert len(enumerate_tilings(cycles, lam)) == expected


@pytest.mark.parametrize("w", range(1, 8))
def test_enumerate_tilings_single_cycle_brute_force(w):
    for lam in partitions_of(w):
        assert len(enumerate_tilings((w,), lam)) == _brute_tilings_of_cycle(w, lam)


def test_enumerate_tilings_two_cycles_brute_force():
    cycles = (3, 2)
    for lam in partitions_of(5):
        expected = 0
        parts = list(lam)
        seen = set()
        for mask in itertools.product([0, 1], repeat=len(parts)):
            first = tuple(sorted((x for x, m in zip(parts, mask) if m == 0), reverse=True))
            second = tuple(sorted((x for x, m in zip(parts, mask) if m == 1), reverse=True))
            if (first, second) in seen or sum(first) != 3 or sum(second) != 2:
                continue
            seen.add((first, second))
            expected += _brute_tilings_of_cycle(3, first) * _brute_tilings_of_cycle(2, second)
        assert len(enumerate_tilings(cycles, lam)) == expected


def test_enumerate_tilings_weight_mismatch():
    with pytest.raises(WeightMismatch):
        enumerate_tilings((3,), (2,))


def test_automorphism_group_order():
    # rotations of each cycle times permutations of equal-length cycles
    assert len(automorphisms((3,))) == 3
    assert len(automorphisms((2, 2))) == 8
    assert len(automorphisms((2, 1))) == 2


@pytest.mark.parametrize("cycles, lam, mu, expected", [
    ((4,), (2, 2), (3, 1), 2),
    ((5,), (2, 2, 1), (3, 2), 5),
    ((1,), (1,), (1,), 1),
])
def test_eta_examples(cycles, lam, mu, expected):
    assert eta(cycles, lam, mu) == expected


@pytest.mark.parametrize("lam, mu, expected", [
    ((1,), (1,), 1),
    ((1, 1), (2,), 1),    # m_2 = e_1^2 - 2 e_2
    ((2,), (2,), -2),
    ((2,), (1, 1), 1),
    ((3, 1), (2, 1, 1), 1),
    ((5, 1), (4, 2), -6),
])
def test_d_coeff_values(lam, mu, expected):
    assert d_coeff(lam, mu) == expected
    assert d_coeff(lam, mu, method="enumerate") == expected


def test_d_coeff_weight_mismatch():
    with pytest.raises(WeightMismatch):
        d_coeff((3,), (2,))


def test_enumeration_cap():
    lam = (MAX_ENUM_WEIGHT + 1,)
    with pytest.raises(WeightCapExceeded):
        d_coeff(lam, lam, method="enumerate")
    # the component method has no cap
    assert d_coeff(lam, lam) == (-1) ** MAX_ENUM_WEIGHT * (MAX_ENUM_WEIGHT + 1)


@pytest.mark.parametrize("w", range(1, 8))
def test_components_match_enumeration(w):
    for lam in partitions_of(w):
        for mu in partitions_of(w):
            assert d_coeff(lam, mu) == d_coeff(lam, mu, method="enumerate")


@pytest.mark.parametrize("w", range(1, 11))
def test_d_symmetric(w):
    for lam in partitions_of(w):
        for mu in partitions_of(w):
            assert d_coeff(lam, mu) == d_coeff(mu, lam)


def test_primitive_types_small():
    # one 2-cycle tiled by {1,1} and {2}: a single rotation class
    assert primitive_types(((1, 2),), ((2, 1),)) == 1
    # {1,1} against {1,1} on a 2-cycle is periodic, no aperiodic class
    assert primitive_types(((1, 2),), ((1, 2),)) == 0


@pytest.mark.parametrize("lam, mu, expected", [
    ((3, 1), (2, 1, 1), 1),
    ((5, 1), (4, 2), -6),
    ((2, 2), (2, 2), None),
    ((1, 1), (2,), 1),
])
def test_d_closed_form(lam, mu, expected):
    assert d_closed_form(lam, mu) == expected


def test_eta_closed_form_examples():
    assert eta_single_cycle_closed_form((2, 2), (3, 1)) == 2
    assert eta_single_cycle_closed_form((2, 2, 1), (3, 2)) == 5
    assert eta_single_cycle_closed_form((2, 2), (2, 2)) is None


@pytest.mark.parametrize("mu, n, expected", [
    ((2,), 2, {(1, 1): 1, (2,): -2}),
    ((1,), 1, {(1,): 1}),
    ((1, 1), 2, {(2,): 1}),
    ((2, 1), 3, {(2, 1): 1, (3,): -3}),
])
def test_psi_examples(mu, n, expected):
    assert psi_expansion(mu, n) == expected
    assert oracle_psi_expansion(mu, n) == expected


def test_psi_too_many_parts():
    with pytest.raises(TooManyParts):
        psi_expansion((1, 1, 1), 2)
    with pytest.raises(TooManyParts):
        oracle_psi_expansion((1, 1, 1), 2)


def _newton_power_sum(k, n):
    """p_k in elementary symmetric polynomials via Newton's identities."""
    p = {}
    for m in range(1, k + 1):
        # p_m = (-1)^{m-1} m e_m + sum_{i=1}^{m-1} (-1)^{i-1} e_i p_{m-i}
        out = {}
        if m <= n:
            out[(m,)] = (-1) ** (m - 1) * m
        for i in range(1, min(m - 1, n) + 1):
            for lam, c in p[m - i].items():
                key = tuple(sorted(lam + (i,), reverse=True))
                out[key] = out.get(key, 0) + (-1) ** (i - 1) * c
        p[m] = {k2: v for k2, v in out.items() if v}
    return p[k]


@pytest.mark.parametrize("k, n", [(2, 2), (3, 3), (4, 2), (5, 5), (6, 4)])
def test_power_sums_match_newton(k, n):
    assert psi_expansion((k,), n) == _newton_power_sum(k, n)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_psi_matches_oracle_random(parts):
    mu = tuple(sorted(parts, reverse=True))
    n = len(mu) + 1
    assert psi_expansion(mu, n) == oracle_psi_expansion(mu, n)

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from uniformizer.basefield import BaseFieldConfig, PrecisionTooLow
from uniformizer.extension import (EisensteinPoly, InseparabilityProfile, NotEisenstein, check_eisenstein,
                                   decompose, hasse_herbrand, index_valuation_consistent, indices,
                                   indices_raw, lower_breaks, phi, phi_table, phi_tilde, split_degree,
                                   validate_eisenstein, vbar)
from uniformizer.theorems import example_2adic_deg4, example_3adic_deg9, random_eisenstein

Q2 = BaseFieldConfig(2)


@pytest.fixture(scope="module")
def ex1():
    return indices(example_3adic_deg9())


@pytest.fixture(scope="module")
def ex2():
    return indices(example_2adic_deg4())


def test_example2_coefficients():
    f = example_2adic_deg4()
    assert [c.coords[0] for c in f.coeffs] == [0, 6, -4, 2]
    assert [c.coords[0] for c in f.monic_coeffs()] == [0, 6, 4, 2]
    assert validate_eisenstein(f) == []


@pytest.mark.parametrize("monic, message", [
    ([0, -1], "v(c_2) = 0"),
    ([0, -4], "v(c_2) = 2"),
    ([1, 2], "v(c_1) = 0"),
])
def test_validate_rejects(monic, message):
    f = EisensteinPoly.from_monic(Q2, monic)
    violations = validate_eisenstein(f)
    assert any(message in v for v in violations)
    with pytest.raises(NotEisenstein):
        check_eisenstein(f)


def test_validate_needs_precision():
    f = EisensteinPoly(Q2, (Q2.from_integer(0).with_precision(1), Q2.from_integer(2).with_precision(1)))
    with pytest.raises(PrecisionTooLow):
        validate_eisenstein(f)


@pytest.mark.parametrize("k, nu, p, expected", [(9, 2, 3, 2), (6, 2, 3, 1), (27, 2, 3, 2), (5, 3, 2, 0)])
def test_vbar(k, nu, p, expected):
    assert vbar(k, nu, p) == expected


def test_split_degree():
    assert split_degree(12, 2) == (3, 2)
    assert split_degree(9, 3) == (1, 2)
    assert split_degree(5, 3) == (5, 0)


@pytest.mark.parametrize("i, n", [(5, 4), (2, 4), (0, 4), (16, 9), (12, 9), (0, 9), (8, 4)])
def test_decompose(i, n):
    A, b = decompose(i, n)
    assert A * n - b == i and 1 <= b <= n


def test_example2_indices(ex2):
    assert indices_raw(example_2adic_deg4()) == [5, 2, 0]
    assert ex2.i == (5, 2, 0)
    assert (ex2.A, ex2.b) == ((2, 1, 1), (3, 2, 4))
    assert ex2.e_L == 4


def test_example1_indices(ex1):
    assert indices_raw(example_3adic_deg9()) == [16, 12, 0]
    assert ex1.i == (16, 12, 0)
    assert (ex1.A, ex1.b) == ((2, 2, 1), (2, 6, 9))


def test_phi_values(ex1, ex2):
    assert phi_tilde(ex1, 0, 1) == 17
    assert phi_tilde(ex1, 2, 3) == 27
    assert phi(ex2, 2, 1) == 4
    assert phi(ex1, 2, 3) == 19
    assert phi(ex1, 2, 0) == 0
    assert hasse_herbrand(ex2, 1) == 1
    assert hasse_herbrand(ex1, 2) == 2
    assert hasse_herbrand(ex1, 0) == 0


def test_phi_tables(ex1, ex2):
    assert phi_table(ex1, 3) == [[1, 17, 15, 9, 17, 15, 9], [2, 18, 18, 18, 18, 18, 18],
                                 [3, 19, 21, 27, 19, 19, 19]]
    assert phi_table(ex2, 3) == [[1, 6, 4, 4, 6, 4, 4], [2, 7, 6, 8, 7, 6, 6], [3, 8, 8, 12, 8, 8, 8]]
    assert phi_table(ex2, 0) == []


def test_breaks(ex1, ex2):
    assert lower_breaks(ex2) == [1, 3]
    assert lower_breaks(ex1) == [2]
    tame = InseparabilityProfile.from_indices(5, 3, [0])
    assert lower_breaks(tame) == []


def test_charp_indices_equal_raw():
    F = BaseFieldConfig(2, "charp")
    t = F.uniformizer()
    f = EisensteinPoly.from_signed(F, [t ** 2, 0, t ** 3, t])
    prof = indices(f)
    assert list(prof.i) == indices_raw(f)
    assert index_valuation_consistent(prof)


def test_infinite_raw_index_is_allowed():
    # over Q_2 with only c_4 nonzero, i_0^pi and i_1^pi are infinite
    f = EisensteinPoly.from_signed(Q2, [0, 0, 0, 2])
    prof = indices(f)
    assert prof.raw[0] == float("inf")
    assert prof.i == (8, 4, 0)


def test_fixtures_fact3(ex1, ex2):
    assert index_valuation_consistent(ex1)
    assert index_valuation_consistent(ex2)


def test_profile_json_round_trip(ex1):
    again = InseparabilityProfile.from_json(ex1.to_json())
    assert again == ex1


def _random_poly(seed):
    rng = random.Random(seed)
    K = rng.choice([BaseFieldConfig(2), BaseFieldConfig(3), BaseFieldConfig(3, "char0", e=2),
                    BaseFieldConfig(5), BaseFieldConfig(2, "charp"), BaseFieldConfig(3, "charp")])
    return random_eisenstein(rng, K, rng.randint(2, 12))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_index_chain(seed):
    f = _random_poly(seed)
    prof = indices(f)
    i = prof.i
    assert i[-1] == 0
    if prof.nu:
        assert i[-2] > 0
    assert all(i[j] >= i[j + 1] for j in range(len(i) - 1))
    if f.base.charp:
        assert list(i) == indices_raw(f)
        assert index_valuation_consistent(prof)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.fractions(min_value=0, max_value=20, max_denominator=6))
def test_phi_is_min_and_concave(seed, x):
    prof = indices(_random_poly(seed))
    for j in range(prof.nu + 1):
        assert all(prof.phi(j, x) <= prof.phi_tilde(j0, x) for j0 in range(j + 1))
        h = Fraction(1, 7)
        left, mid, right = prof.phi(j, x), prof.phi(j, x + h), prof.phi(j, x + 2 * h)
        assert left <= mid <= right
        assert mid - left >= right - mid

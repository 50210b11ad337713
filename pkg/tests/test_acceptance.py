"""Acceptance criteria 1-10.

Each ``test_criterion_<n>_*`` covers one criterion; tests/conftest.py prints
one ``ACCEPTANCE <n> PASS|FAIL`` line per criterion after the run.
"""
import math
import random
import time

import pytest

from uniformizer.basefield import congruent
from uniformizer.extension import indices, lower_breaks, phi_table
from uniformizer.perturb import PerturbationSeries, minpoly_linear_algebra
from uniformizer.symcomb import (d_closed_form, d_coeff, eta, eta_single_cycle_closed_form,
                                 is_repeat_of, oracle_psi_expansion, partitions_of, psi_expansion,
                                 scale_partition)
from uniformizer.theorems import (equiv_ell, example_2adic_deg4, example_3adic_deg9, kappa,
                                  predict_special, random_cases, rho, run_case, verify_special)

SEED = 7
CASES = 200


@pytest.fixture(scope="module")
def ex1():
    return example_3adic_deg9()


@pytest.fixture(scope="module")
def ex2():
    return example_2adic_deg4()


@pytest.fixture(scope="module")
def random_outcomes():
    start = time.perf_counter()
    outcomes = [run_case(case, min_precision=10) for case in random_cases(CASES, SEED)]
    return outcomes, time.perf_counter() - start


def test_criterion_1_indices_2adic_deg4(ex2):
    start = time.perf_counter()
    prof = indices(ex2)
    assert prof.i == (5, 2, 0)
    assert time.perf_counter() - start < 0.1


def test_criterion_2_phi_tables(ex1, ex2):
    phi_cols = lambda rows: [row[1 + len(row) // 2:] for row in rows]  # noqa: E731
    assert phi_cols(phi_table(indices(ex1), 3)) == [[17, 15, 9], [18, 18, 18], [19, 19, 19]]
    assert phi_cols(phi_table(indices(ex2), 3)) == [[6, 4, 4], [7, 6, 6], [8, 8, 8]]
    # the phi~ columns too, cell for cell
    assert phi_table(indices(ex1), 3) == [[1, 17, 15, 9, 17, 15, 9], [2, 18, 18, 18, 18, 18, 18],
                                          [3, 19, 21, 27, 19, 19, 19]]
    assert phi_table(indices(ex2), 3) == [[1, 6, 4, 4, 6, 4, 4], [2, 7, 6, 8, 7, 6, 6],
                                          [3, 8, 8, 12, 8, 8, 8]]


def test_criterion_3_perturbation_2adic_deg4(ex2):
    start = time.perf_counter()
    K = ex2.base
    phi = PerturbationSeries.from_map(K, {1: 1, 2: 1})
    ft = minpoly_linear_algebra(ex2, phi, 10)
    # modulus 4 = M^2, modulus 8 = M^3
    assert congruent(ft.c(1), 0, 2)
    assert congruent(ft.c(2), 6, 2)
    assert congruent(ft.c(3), -4, 3)
    assert congruent(ft.c(4), 2, 3)
    refined = verify_special(ex2, K.one(), 1, phi, routes=("linear", "symmetric"))
    assert [(s.h, s.k + 1, s.verified) for s in refined] == [(4, 3, True)]
    assert congruent(refined[0].predicted, 2, 3)
    assert equiv_ell(ex2, ft, 1).verdict
    assert equiv_ell(ex2, ft, 2).verdict
    assert time.perf_counter() - start < 1.0


def _units(K, count, seed):
    rng = random.Random(seed)
    pi = K.uniformizer()
    out = []
    while len(out) < count:
        a = rng.randrange(1, 3 ** 6)
        if a % 3:
            out.append(K.from_integer(a, exact=True) + pi * rng.randrange(0, 3 ** 6))
    return out


def test_criterion_4_congruence_formulas_3adic_deg9(ex1):
    K = ex1.base
    c = ex1.c
    N = 8
    units = _units(K, 24, SEED)
    for r in units:
        ft1 = minpoly_linear_algebra(ex1, PerturbationSeries.simple(K, r, 1), N)
        assert congruent(ft1.c(1), c(1) - c(2) * r * 2, 3)
        assert congruent(ft1.c(3), c(3) - c(6) * r ** 3 * 2, 3)
        ft2 = minpoly_linear_algebra(ex1, PerturbationSeries.simple(K, r, 2), N)
        expected = c(9) - c(2) * c(9) * r * 2 - c(6) * c(9) * r ** 3 * 2 + c(9) ** 3 * r ** 9
        assert congruent(ft2.c(9), expected, 4)
        assert congruent(predict_special(ex1, r, 2, 2)[1], expected, 4)
        ft3 = minpoly_linear_algebra(ex1, PerturbationSeries.simple(K, r, 3), N)
        assert congruent(ft3.c(8), c(8) + c(2) * c(9) * r * 2, 4)
        assert congruent(predict_special(ex1, r, 3, 0)[1], c(8) + c(2) * c(9) * r * 2, 4)


def test_criterion_5_psi_oracle_equivalence():
    start = time.perf_counter()
    checked = 0
    for w in range(1, 9):
        for mu in partitions_of(w):
            for n in range(len(mu), 9):
                assert psi_expansion(mu, n) == oracle_psi_expansion(mu, n), (mu, n)
                checked += 1
    assert checked == 377
    assert time.perf_counter() - start < 60


def test_criterion_6_closed_forms():
    d_checked = eta_checked = 0
    for w in range(1, 11):
        for lam in partitions_of(w):
            for mu in partitions_of(w):
                value = d_closed_form(lam, mu)
                if value is not None:
                    assert value == d_coeff(lam, mu), (lam, mu)
                    assert value == d_coeff(lam, mu, method="enumerate"), (lam, mu)
                    d_checked += 1
                value = eta_single_cycle_closed_form(lam, mu)
                if value is not None:
                    assert value == eta((w,), lam, mu), (lam, mu)
                    eta_checked += 1
    assert d_checked > 0 and eta_checked > 0


def _vp(m, p):
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def test_criterion_7_divisibility_and_congruence():
    for p in (2, 3):
        # p^{t-j} | d(p^t . lam', mu) unless mu = p^{j+1} * mu'
        for w in range(1, 13):
            for lam in partitions_of(w):
                t_max = _vp(math.gcd(*lam), p)
                for mu in partitions_of(w):
                    d = d_coeff(lam, mu)
                    for t in range(t_max + 1):
                        for j in range(t + 1):
                            if not is_repeat_of(mu, p ** (j + 1)):
                                assert d % p ** (t - j) == 0, (p, lam, mu, t, j)
        # d(p^j . lam', p^j * mu') == d(lam', mu') mod p^{t+1} when p^t | every part of lam'
        for w0 in range(1, 6):
            for lam0 in partitions_of(w0):
                t_max = _vp(math.gcd(*lam0), p)
                for mu0 in partitions_of(w0):
                    d0 = d_coeff(lam0, mu0)
                    for j in (1, 2):
                        lam = scale_partition(lam0, p ** j, "multiply_parts")
                        mu = scale_partition(mu0, p ** j, "repeat")
                        d = d_coeff(lam, mu)
                        for t in range(t_max + 1):
                            assert (d - d0) % p ** (t + 1) == 0, (p, lam0, mu0, j, t)


def test_criterion_8_two_routes_and_root_check(random_outcomes):
    outcomes, elapsed = random_outcomes
    assert len(outcomes) == CASES
    assert all(o.routes_agree for o in outcomes)
    assert all(o.root_ok for o in outcomes)
    fields = {(o.case.f.p, o.case.f.base.backend, o.case.f.base.e) for o in outcomes}
    assert {p for p, _, _ in fields} == {2, 3, 5}
    assert any(b == "charp" for _, b, _ in fields)
    assert {e for _, b, e in fields if b == "char0"} == {1, 2}
    assert max(o.case.f.n for o in outcomes) <= 9
    assert max(o.case.phi.degree for o in outcomes) <= 5
    assert elapsed < 300


def test_criterion_9_random_congruence_suites(random_outcomes):
    outcomes, _ = random_outcomes
    assert all(o.nochange.verdict for o in outcomes)
    assert all(s.verified for o in outcomes for s in o.special)
    assert sum(len(o.special) for o in outcomes) > 0
    assert all(o.same_indices for o in outcomes)


def test_criterion_10_krasner_comparison(ex1, ex2, random_outcomes):
    outcomes, _ = random_outcomes
    profiles = [indices(ex1), indices(ex2)] + [indices(o.case.f) for o in outcomes]
    for prof in profiles:
        for ell in range(1, 8):
            assert all(kappa(prof, h, ell) <= rho(prof, h, ell) for h in range(1, prof.n + 1))
        breaks = lower_breaks(prof)
        last = math.ceil(max(breaks)) if breaks else 1
        for ell in range(max(1, last), last + 4):
            assert all(kappa(prof, h, ell) == rho(prof, h, ell) for h in range(1, prof.n + 1))
    p1 = indices(ex1)
    assert rho(p1, 2, 1) == 3 and kappa(p1, 2, 1) == 2

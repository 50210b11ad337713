"""Coefficient congruences for perturbed uniformizers and their verification.

``rho``/``kappa`` give the predicted moduli, ``equiv_ell`` checks the ~_ell
relation, ``special_terms``/``predict_special`` give the refined congruence
for the distinguished coefficient c~_h, and the ``verify_*`` helpers compare
predictions against minimal polynomials computed in :mod:`perturb`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .basefield import INF, BaseFieldConfig, FieldElement, PrecisionTooLow, congruent
from .extension import EisensteinPoly, InseparabilityProfile, ceil_frac, check_eisenstein, indices, vbar
from .perturb import (PerturbationSeries, QuotientElement, minpoly_linear_algebra,
                      minpoly_symmetric, quot_apply_series, root_check, routes_agree)

DEFAULT_CEILING = 60


class HypothesisViolated(ValueError):
    pass


class PrecisionCeiling(PrecisionTooLow):
    """Raised when automatic precision raising reaches its ceiling."""


# -- predicted exponents ---------------------------------------------------

def rho(profile: InseparabilityProfile, h: int, ell: int) -> int:
    j = vbar(h, profile.nu, profile.p)
    return ceil_frac((profile.phi(j, ell) + h) / Fraction(profile.n))


def kappa(profile: InseparabilityProfile, h: int, ell: int) -> int:
    value = ceil_frac((profile.phi(profile.nu, ell) + h) / Fraction(profile.n))
    assert value <= rho(profile, h, ell)
    return value


@dataclass(frozen=True)
class CoefficientCheck:
    h: int
    rho: int
    kappa: int
    verified: bool
    max_verified: int | float  # v_K(c~_h - c_h), or the precision when that is a lower bound
    ceiling: int | None  # smallest precision of the two coefficients

    def to_json(self) -> dict:
        return {"h": self.h, "rho": self.rho, "kappa": self.kappa, "verified": self.verified,
                "max_verified": None if self.max_verified == INF else int(self.max_verified),
                "ceiling": self.ceiling}


@dataclass(frozen=True)
class CongruenceReport:
    ell: int
    checks: tuple[CoefficientCheck, ...]

    @property
    def verdict(self) -> bool:
        return all(c.verified for c in self.checks)

    def to_json(self) -> dict:
        return {"ell": self.ell, "verdict": self.verdict, "checks": [c.to_json() for c in self.checks]}


def _precision_of(*elems: FieldElement) -> int | None:
    precs = [e.prec for e in elems if e.prec is not None]
    return min(precs) if precs else None


def equiv_ell(f: EisensteinPoly, ft: EisensteinPoly, ell: int,
              profile: InseparabilityProfile | None = None) -> CongruenceReport:
    """Check c~_h == c_h mod M_K^{rho_h(ell)} for every h."""
    if f.n != ft.n or not f.base.same_field(ft.base):
        raise ValueError("polynomials over different fields or of different degree")
    profile = profile or indices(f)
    checks = []
    for h in range(1, f.n + 1):
        a, b = f.c(h), ft.c(h)
        want = rho(profile, h, ell)
        ceiling = _precision_of(a, b)
        diff = (b - a).truncate(ceiling)
        v = diff.valuation()
        if v is None:
            if ceiling < want:
                raise PrecisionTooLow(f"c~_{h}: precision {ceiling} below rho_{h} = {want}")
            v_seen = ceiling
        else:
            v_seen = v
        checks.append(CoefficientCheck(h, want, kappa(profile, h, ell), v_seen >= want, v_seen, ceiling))
    return CongruenceReport(ell, tuple(checks))


# -- the refined congruence ---------------------------------------------------

@dataclass(frozen=True)
class SpecialTerms:
    ell: int
    j: int
    h: int
    h0: int
    k: int
    S: tuple[int, ...]
    A: tuple[int, ...]  # A_m for m in S
    b: tuple[int, ...]  # b_m for m in S
    g: tuple[int, ...]  # g_m for m in S

    def to_json(self) -> dict:
        return {"ell": self.ell, "j": self.j, "h": self.h, "h0": self.h0, "k": self.k,
                "S": [{"m": m, "A": a, "b": b, "g": g}
                      for m, a, b, g in zip(self.S, self.A, self.b, self.g)]}


def special_terms(profile: InseparabilityProfile, ell: int, j: int) -> SpecialTerms | None:
    """Data of the refined congruence at (ell, j), or None when
    v̄_p(phi_j(ell)) != j."""
    n, p, nu, u = profile.n, profile.p, profile.nu, profile.u
    value = profile.phi(j, ell)
    if value.denominator != 1:
        return None
    value = int(value)
    if vbar(value, nu, p) != j:
        return None
    hs = [h for h in range(1, n + 1) if (value + h) % n == 0]
    assert len(hs) == 1, hs
    h = hs[0]
    assert h % p ** j == 0
    h0 = h // p ** j
    k = (value + h) // n
    S = tuple(m for m in range(j + 1) if profile.phi_tilde(m, ell) == value)
    g = []
    for m in S:
        A_m, b_m = profile.A[m], profile.b[m]
        sign = (-1) ** (k + ell + A_m)
        if b_m == n:
            g.append(sign * u * p ** (nu - m))
        elif b_m < h:
            g.append(sign * (h0 * p ** (j - m) + ell - u * p ** (nu - m)))
        else:
            g.append(sign * (h0 * p ** (j - m) + ell))
    return SpecialTerms(ell, j, h, h0, k, S,
                        tuple(profile.A[m] for m in S), tuple(profile.b[m] for m in S), tuple(g))


def applicable_js(profile: InseparabilityProfile, ell: int) -> list[int]:
    return [j for j in range(profile.nu + 1) if special_terms(profile, ell, j) is not None]


def predict_special(f: EisensteinPoly, r: FieldElement, ell: int, j: int,
                    profile: InseparabilityProfile | None = None):
    """(terms, predicted c~_h mod M_K^{k+1}) for the refined congruence."""
    profile = profile or indices(f)
    terms = special_terms(profile, ell, j)
    if terms is None:
        raise ValueError(f"refined congruence does not apply at ell={ell}, j={j}")
    if r.valuation_lower_bound() < 0:
        raise ValueError("r must be integral")
    p, n, k = f.p, f.n, terms.k
    value = f.c(terms.h)
    for m, A_m, b_m, g_m in zip(terms.S, terms.A, terms.b, terms.g):
        if k < A_m:
            raise ArithmeticError(f"negative exponent k - A_{m}")
        value = value + f.c(n) ** (k - A_m) * f.c(b_m) * r ** (p ** m) * g_m
    return terms, value.truncate(k + 1)


# -- verification harnesses ------------------------------------------------------

def with_auto_precision(run: Callable[[int], object], start: int, ceiling: int = DEFAULT_CEILING):
    """Call ``run(N)`` with increasing N until it stops raising PrecisionTooLow."""
    N = max(1, start)
    if N > ceiling:
        raise PrecisionCeiling(f"precision ceiling {ceiling} is below the required {N}")
    while True:
        try:
            return run(N)
        except PrecisionCeiling:
            raise
        except PrecisionTooLow as exc:
            if N >= ceiling:
                raise PrecisionCeiling(f"precision ceiling {ceiling} reached: {exc}") from exc
            N = min(ceiling, N + max(4, N // 2))


def ground_truth(f: EisensteinPoly, phi: PerturbationSeries, precision: int,
                 routes: tuple[str, ...] = ("linear",)) -> EisensteinPoly:
    """Minimal polynomial of phi(pi_L) at ``precision``; with both routes
    requested they must agree and the result must pass the root check."""
    ft = minpoly_linear_algebra(f, phi, precision)
    if "symmetric" in routes:
        fs = minpoly_symmetric(f, phi, precision)
        if not routes_agree(ft, fs):
            raise AssertionError("linear-algebra and symmetric routes disagree")
    return ft


def _hypothesis_holds(f: EisensteinPoly, phi: PerturbationSeries, target: QuotientElement | None,
                      order: int) -> bool:
    """v_L(phi(pi_L) - target) >= order, with target = pi_L by default."""
    N = -(-order // f.n) + 1
    alpha = quot_apply_series(f, phi, N)
    x = target or QuotientElement.from_poly(f, [f.base.zero(), f.base.one()])
    return (alpha - x.truncate(N)).is_zero_mod_L(order)


def verify_nochange(f: EisensteinPoly, phi: PerturbationSeries, ell: int,
                    routes: tuple[str, ...] = ("linear",),
                    ceiling: int = DEFAULT_CEILING) -> CongruenceReport:
    """Compare f~ with f under ~_ell, for phi(pi_L) == pi_L mod M_L^{ell+1}."""
    check_eisenstein(f)
    if not _hypothesis_holds(f, phi, None, ell + 1):
        raise HypothesisViolated(f"phi(pi_L) is not congruent to pi_L mod M_L^{ell + 1}")
    profile = indices(f)
    need = max(rho(profile, h, ell) for h in range(1, f.n + 1))

    def run(N):
        return equiv_ell(f, ground_truth(f, phi, N, routes), ell, profile)

    return with_auto_precision(run, need, ceiling)


@dataclass(frozen=True)
class SpecialResult:
    j: int
    h: int
    k: int
    predicted: FieldElement
    actual: FieldElement
    verified: bool
    terms: SpecialTerms = field(repr=False, default=None)

    def to_json(self) -> dict:
        return {"j": self.j, "h": self.h, "k": self.k, "modulus_exponent": self.k + 1,
                "predicted": self.predicted.to_json(), "actual": self.actual.truncate(self.k + 1).to_json(),
                "verified": self.verified, "terms": self.terms.to_json()}


def verify_special(f: EisensteinPoly, r: FieldElement, ell: int,
                   phi: PerturbationSeries | None = None,
                   routes: tuple[str, ...] = ("linear",),
                   ceiling: int = DEFAULT_CEILING) -> list[SpecialResult]:
    """Check every applicable refined congruence; [] when none applies."""
    check_eisenstein(f)
    base = f.base
    if phi is None:
        phi = PerturbationSeries.simple(base, r, ell)
    x = QuotientElement.from_poly(f, [base.zero(), base.one()])
    target = x + QuotientElement.from_poly(f, [base.zero()] * (ell + 1) + [r])
    if not _hypothesis_holds(f, phi, target, ell + 2):
        raise HypothesisViolated(f"phi(pi_L) is not pi_L + r pi_L^{ell + 1} mod M_L^{ell + 2}")
    profile = indices(f)
    js = applicable_js(profile, ell)
    if not js:
        return []
    predictions = [predict_special(f, r, ell, j, profile) for j in js]
    need = max(t.k + 1 for t, _ in predictions)

    def run(N):
        ft = ground_truth(f, phi, N, routes)
        out = []
        for j, (terms, pred) in zip(js, predictions):
            actual = ft.c(terms.h)
            ok = congruent(actual, pred, terms.k + 1)
            out.append(SpecialResult(j, terms.h, terms.k, pred, actual, ok, terms))
        return out

    return with_auto_precision(run, need, ceiling)


# -- fixtures -------------------------------------------------------------------

def example_3adic_deg9(precision: int = 20) -> EisensteinPoly:
    """Degree 9 over Q_3(pi), pi^2 = 3, with the valuation pattern
    v(c_2) = v(c_6) = 2, v(c_1), v(c_3) >= 2, v(c_4,5,7,8) >= 3, v(c_9) = 1."""
    K = BaseFieldConfig(3, "char0", e=2, precision=precision)
    pi = K.uniformizer()
    return EisensteinPoly.from_signed(K, [3, 3, -3, 3 * pi, 0, -3, 9, 3 * pi, pi])


def example_2adic_deg4(precision: int = 20) -> EisensteinPoly:
    """X^4 + 6X^2 + 4X + 2 over Q_2."""
    return EisensteinPoly.from_monic(BaseFieldConfig(2, precision=precision), [0, 6, 4, 2])


FIXTURES = {
    "3adic-deg9": example_3adic_deg9,
    "2adic-deg4": example_2adic_deg4,
}


# -- random cases ------------------------------------------------------------------

@dataclass(frozen=True)
class RandomCase:
    f: EisensteinPoly
    ell: int
    r: FieldElement
    phi: PerturbationSeries

    def to_json(self) -> dict:
        return {"field": self.f.base.describe(), "f": self.f.to_json(), "ell": self.ell,
                "r": self.r.to_json(), "phi": self.phi.to_json()}


def _random_unit(rng: random.Random, K: BaseFieldConfig, size: int = 3) -> FieldElement:
    p = K.p
    if K.charp:
        coords = [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(size - 1)]
        return K.from_coords(coords)
    e = K.e
    coords = [rng.randrange(p ** size) for _ in range(e)]
    while coords[0] % p == 0:
        coords[0] = rng.randrange(p ** size)
    return K.from_coords(coords)


def _random_element(rng: random.Random, K: BaseFieldConfig, min_val: int, max_val: int) -> FieldElement:
    return _random_unit(rng, K) * K.pi_power(rng.randint(min_val, max_val))


def random_field(rng: random.Random) -> BaseFieldConfig:
    kind = rng.choice(["qp", "qp", "ramified", "laurent"])
    if kind == "laurent":
        return BaseFieldConfig(rng.choice([2, 3]), "charp")
    p = rng.choice([2, 3, 5])
    return BaseFieldConfig(p, "char0", e=2 if kind == "ramified" else 1)


def random_eisenstein(rng: random.Random, K: BaseFieldConfig, n: int) -> EisensteinPoly:
    p = K.p
    coeffs = []
    for h in range(1, n):
        coeffs.append(K.zero() if rng.random() < 0.25 else _random_element(rng, K, 1, 3))
    coeffs.append(_random_element(rng, K, 1, 1))
    if K.charp and all(coeffs[h - 1].is_exact_zero() for h in range(1, n + 1) if h % p):
        # keep the extension separable: some c_h with p not dividing h must be nonzero
        h = rng.choice([h for h in range(1, n) if h % p])
        coeffs[h - 1] = _random_element(rng, K, 1, 3)
    return EisensteinPoly(K, tuple(coeffs))


def random_case(rng: random.Random, max_n: int = 9, max_ell: int = 4, max_deg: int = 5) -> RandomCase:
    """A random (f, ell, r, phi) with phi(pi_L) == pi_L + r pi_L^{ell+1} mod M_L^{ell+2}."""
    K = random_field(rng)
    n = rng.randint(2, max_n)
    if K.charp and n < K.p:
        n = K.p  # make wild ramification likely; n = p keeps nu = 1
    f = random_eisenstein(rng, K, n)
    ell = rng.randint(1, min(max_ell, max_deg - 1))
    r = K.zero() if rng.random() < 0.1 else _random_element(rng, K, 0, 1)
    terms = {1: K.one(), ell + 1: r}
    if rng.random() < 0.5:
        # r_1 = 1 + delta with v_L(delta pi_L) >= ell + 2
        terms[1] = K.one() + _random_element(rng, K, -(-(ell + 1) // n), 3)
    for k in range(2, ell + 1):
        if rng.random() < 0.3:
            terms[k] = _random_element(rng, K, -(-(ell + 2 - k) // n), 3)
    for k in range(ell + 2, max_deg + 1):
        if rng.random() < 0.4:
            terms[k] = _random_element(rng, K, 0, 2)
    phi = PerturbationSeries.from_map(K, terms)
    return RandomCase(f, ell, r, phi)


def random_cases(count: int, seed: int, **kwargs) -> list[RandomCase]:
    rng = random.Random(seed)
    return [random_case(rng, **kwargs) for _ in range(count)]


@dataclass(frozen=True)
class CaseOutcome:
    case: RandomCase
    routes_agree: bool
    root_ok: bool
    nochange: CongruenceReport
    special: tuple[SpecialResult, ...]
    same_indices: bool
    precision: int

    @property
    def passed(self) -> bool:
        return (self.routes_agree and self.root_ok and self.nochange.verdict
                and all(s.verified for s in self.special) and self.same_indices)

    def to_json(self) -> dict:
        return {"case": self.case.to_json(), "precision": self.precision,
                "routes_agree": self.routes_agree, "root_check": self.root_ok,
                "nochange": self.nochange.to_json(),
                "special": [s.to_json() for s in self.special],
                "same_indices": self.same_indices, "passed": self.passed}


def run_case(case: RandomCase, min_precision: int = 8,
             ceiling: int = DEFAULT_CEILING) -> CaseOutcome:
    """Both minpoly routes, the root check, both theorems and the
    uniformizer independence of the indices, at one automatically chosen
    precision (never below ``min_precision``, so the route comparison and
    the root check see more digits than the congruences need)."""
    f, phi, ell = case.f, case.phi, case.ell
    profile = indices(f)
    need = max(rho(profile, h, ell) for h in range(1, f.n + 1))
    js = applicable_js(profile, ell)
    predictions = [predict_special(f, case.r, ell, j, profile) for j in js]
    need = max([need] + [t.k + 1 for t, _ in predictions])
    # indices of f~ need enough digits to see the minimising coefficient
    need = max(need, max(profile.i) // f.n + 2, min_precision)

    def run(N):
        ft = minpoly_linear_algebra(f, phi, N)
        fs = minpoly_symmetric(f, phi, N)
        agree = routes_agree(ft, fs)
        root_ok = root_check(f, phi, ft) and root_check(f, phi, fs)
        report = equiv_ell(f, ft, ell, profile)
        special = []
        for j, (terms, pred) in zip(js, predictions):
            actual = ft.c(terms.h)
            special.append(SpecialResult(j, terms.h, terms.k, pred, actual,
                                         congruent(actual, pred, terms.k + 1), terms))
        same = indices(ft).same_invariants(profile)
        return CaseOutcome(case, agree, root_ok, report, tuple(special), same, N)

    if not _hypothesis_holds(f, phi, None, ell + 1):
        raise HypothesisViolated("random case violates the nochange hypothesis")
    return with_auto_precision(run, need, ceiling)

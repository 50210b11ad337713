"""Minimal polynomial of a perturbed uniformizer, computed two ways.

``minpoly_linear_algebra`` works in the quotient ring K[X]/(f) and solves for
the monic relation satisfied by phi(pi_L).  ``minpoly_symmetric`` expands the
elementary symmetric functions of the conjugates of phi(pi_L) through the
monomial-to-elementary coefficients of :mod:`symcomb`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .basefield import INF, BaseFieldConfig, FieldElement, PrecisionTooLow, parse_element
from .extension import EisensteinPoly
from .symcomb import TooManyParts, d_coeff, partition, partitions_of


class InvalidPerturbation(ValueError):
    pass


class PartOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class PerturbationSeries:
    """phi(X) = sum r_k X^k over a finite support of degrees k >= 1."""

    base: BaseFieldConfig
    terms: tuple[tuple[int, FieldElement], ...]

    def __post_init__(self):
        degrees = [k for k, _ in self.terms]
        if any(k < 1 for k in degrees):
            raise InvalidPerturbation("phi must have no constant term")
        if len(set(degrees)) != len(degrees):
            raise InvalidPerturbation("repeated degree in phi")
        if self.coeff(1).valuation() != 0:
            raise InvalidPerturbation("v(r_1) must be 0 so that phi(pi_L) is a uniformizer")

    @classmethod
    def from_map(cls, base: BaseFieldConfig, mapping: Mapping, exact: bool = True) -> "PerturbationSeries":
        items = []
        for k, v in sorted(((int(k), v) for k, v in mapping.items())):
            elem = v if isinstance(v, FieldElement) else parse_element(base, v, exact)
            if not elem.is_exact_zero():
                items.append((k, elem))
        return cls(base, tuple(items))

    @classmethod
    def identity(cls, base: BaseFieldConfig) -> "PerturbationSeries":
        return cls(base, ((1, base.one()),))

    @classmethod
    def simple(cls, base: BaseFieldConfig, r, ell: int) -> "PerturbationSeries":
        """phi(X) = X + r X^{ell+1}."""
        return cls.from_map(base, {1: 1, ell + 1: r})

    @property
    def degree(self) -> int:
        return max(k for k, _ in self.terms)

    def coeff(self, k: int) -> FieldElement:
        for d, v in self.terms:
            if d == k:
                return v
        return self.base.zero()

    def to_json(self) -> dict:
        return {str(k): v.to_json() for k, v in self.terms}


# -- the quotient ring K[X]/(f) --------------------------------------------

@dataclass(frozen=True)
class QuotientElement:
    """a_0 + a_1 pi_L + ... + a_{n-1} pi_L^{n-1}."""

    f: EisensteinPoly
    coords: tuple[FieldElement, ...]

    @classmethod
    def from_poly(cls, f: EisensteinPoly, coeffs: Sequence[FieldElement]) -> "QuotientElement":
        """Reduce sum coeffs[k] X^k modulo f."""
        n = f.n
        work = list(coeffs)
        zero = f.base.zero()
        # X^n = sum_h (-1)^{h+1} c_h X^{n-h}
        rel = [f.c(h) if h % 2 else -f.c(h) for h in range(1, n + 1)]
        for top in range(len(work) - 1, n - 1, -1):
            a = work[top]
            if a.is_exact_zero():
                continue
            for h in range(1, n + 1):
                work[top - h] = work[top - h] + a * rel[h - 1]
        work = work[:n] + [zero] * (n - len(work))
        return cls(f, tuple(work))

    @classmethod
    def one(cls, f: EisensteinPoly) -> "QuotientElement":
        return cls.from_poly(f, [f.base.one()])

    def __mul__(self, other: "QuotientElement") -> "QuotientElement":
        n = self.f.n
        prod = [self.f.base.zero()] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a.is_exact_zero():
                continue
            for j, b in enumerate(other.coords):
                if not b.is_exact_zero():
                    prod[i + j] = prod[i + j] + a * b
        return QuotientElement.from_poly(self.f, prod)

    def __add__(self, other: "QuotientElement") -> "QuotientElement":
        return QuotientElement(self.f, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "QuotientElement") -> "QuotientElement":
        return QuotientElement(self.f, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c: FieldElement) -> "QuotientElement":
        return QuotientElement(self.f, tuple(c * a for a in self.coords))

    def truncate(self, k: int | None) -> "QuotientElement":
        return QuotientElement(self.f, tuple(a.truncate(k) for a in self.coords))

    def valuation(self) -> int | float | None:
        """v_L = min(n v_K(a_i) + i); None when a truncated coordinate could
        hold the minimum."""
        n = self.f.n
        terms = []
        for i, a in enumerate(self.coords):
            v = a.valuation()
            if v is None:
                terms.append((n * a.prec + i, False))
            else:
                terms.append((n * v + i if v != INF else INF, True))
        best = min((v for v, ok in terms if ok), default=INF)
        if any(not ok and v < best for v, ok in terms):
            return None
        if best == INF and any(not ok for _, ok in terms):
            return None
        return best

    def valuation_lower_bound(self) -> int | float:
        n = self.f.n
        return min((n * a.valuation_lower_bound() + i for i, a in enumerate(self.coords)), default=INF)

    def is_zero_mod_L(self, k: int) -> bool:
        """v_L(self) >= k, raising PrecisionTooLow when undecidable."""
        n = self.f.n
        for i, a in enumerate(self.coords):
            need = -(-(k - i) // n)  # v_K(a_i) >= ceil((k - i)/n)
            if need > 0 and not a.is_zero_mod(need):
                return False
        return True

    def to_json(self) -> list:
        return [a.to_json() for a in self.coords]


def quot_apply_series(f: EisensteinPoly, phi: PerturbationSeries,
                      precision: int | None = None) -> QuotientElement:
    """phi(pi_L) reduced modulo f (coefficients truncated to ``precision``)."""
    x = QuotientElement.from_poly(f, [f.base.zero(), f.base.one()])
    coeffs = [f.base.zero()] * (phi.degree + 1)
    for k, r in phi.terms:
        coeffs[k] = r.truncate(precision)
    if phi.degree < f.n:
        return QuotientElement.from_poly(f, coeffs)
    # Horner in the quotient ring for high-degree phi
    acc = QuotientElement.from_poly(f, [coeffs[-1]])
    for c in reversed(coeffs[:-1]):
        acc = acc * x + QuotientElement.from_poly(f, [c])
    return acc


def _truncated_poly(f: EisensteinPoly, precision: int | None) -> EisensteinPoly:
    if precision is None:
        return f
    return EisensteinPoly(f.base, tuple(c.truncate(precision) for c in f.coeffs))


# -- route 1: linear algebra -----------------------------------------------

def minpoly_linear_algebra(f: EisensteinPoly, phi: PerturbationSeries,
                           precision: int | None = None) -> EisensteinPoly:
    """Minimal polynomial of phi(pi_L), each coefficient carrying the
    precision certified by the elimination.

    Solves sum_{i<n} a_i alpha^i = alpha^n.  The power-basis matrix of a
    uniformizer is unit lower-triangular modulo M_K, so every pivot is a unit
    and no precision is lost beyond the working precision.
    """
    n = f.n
    N = f.base.precision if precision is None else precision
    ft = _truncated_poly(f, N)
    alpha = quot_apply_series(ft, phi, N)
    powers = [QuotientElement.one(ft).truncate(N)]
    for _ in range(n):
        powers.append((powers[-1] * alpha).truncate(N))
    # rows: coordinate index; columns: alpha^0..alpha^{n-1} | alpha^n
    rows = [[powers[col].coords[row] for col in range(n + 1)] for row in range(n)]
    order = list(range(n))  # unknown index per pivot step
    for step in range(n):
        # choose the entry of minimal certain valuation in the remaining block
        best = None
        for r in range(step, n):
            for c in range(step, n):
                v = rows[r][order[c]].valuation()
                if v is not None and v != INF and (best is None or v < best[0]):
                    best = (v, r, c)
        if best is None or best[0] != 0:
            raise PrecisionTooLow(f"no unit pivot at elimination step {step} (precision {N})")
        _, r, c = best
        rows[step], rows[r] = rows[r], rows[step]
        order[step], order[c] = order[c], order[step]
        piv_inv = rows[step][order[step]].inverse()
        rows[step] = [x * piv_inv for x in rows[step]]
        for r2 in range(n):
            if r2 == step:
                continue
            factor = rows[r2][order[step]]
            if factor.is_exact_zero():
                continue
            rows[r2] = [x - factor * y for x, y in zip(rows[r2], rows[step])]
    a = [None] * n
    for step in range(n):
        a[order[step]] = rows[step][n].truncate(N)
    coeffs = tuple(a[n - h] if h % 2 else -a[n - h] for h in range(1, n + 1))
    return EisensteinPoly(f.base, coeffs)


# -- route 2: symmetric functions ------------------------------------------

def c_lambda(f: EisensteinPoly, lam: Sequence[int]) -> FieldElement:
    out = f.base.one()
    for part in lam:
        if not 1 <= part <= f.n:
            raise PartOutOfRange(f"part {part} outside 1..{f.n}")
        out = out * f.c(part)
    return out


def _zero(base: BaseFieldConfig, precision: int | None) -> FieldElement:
    return base.zero() if precision is None else base.zero().with_precision(precision)


def _budget_partitions(w: int, max_part: int, vals: Sequence, budget):
    """Partitions of w with parts <= max_part whose summed coefficient
    valuation bound (vals[a] for part a) stays below ``budget``."""
    out = []

    def rec(rem, top, acc, spent):
        if rem == 0:
            out.append(tuple(acc))
            return
        for a in range(min(top, rem), 0, -1):
            va = vals[a]
            if va == INF or spent + va >= budget:
                continue
            acc.append(a)
            rec(rem - a, a, acc, spent + va)
            acc.pop()

    rec(w, max_part, [], 0)
    return out


def M_mu(f: EisensteinPoly, mu: Sequence[int], precision: int | None = None) -> FieldElement:
    """sum_lam d_{lam mu} c_lam over partitions lam of |mu| with parts <= n.

    With a finite ``precision`` terms whose valuation bound reaches it are
    skipped (they vanish modulo M_K^precision) and the result carries that
    precision; ``None`` sums every term exactly.
    """
    mu = partition(mu)
    if len(mu) > f.n:
        raise TooManyParts(f"{mu} has more than {f.n} parts")
    w = sum(mu)
    if precision is None:
        lams = partitions_of(w, max_part=f.n) if w else [()]
    else:
        vals = [0] + [f.c(a).valuation_lower_bound() for a in range(1, f.n + 1)]
        lams = _budget_partitions(w, f.n, vals, precision)
    total = _zero(f.base, precision)
    for lam in lams:
        d = d_coeff(lam, mu) if lam else 1
        if d:
            total = total + c_lambda(f, lam) * d
    return total.truncate(precision)


def E_h_perturbed(f: EisensteinPoly, phi: PerturbationSeries, h: int,
                  precision: int | None = None) -> FieldElement:
    """sum over mu with h parts of r_{mu_1}..r_{mu_h} M_mu."""
    if not 1 <= h <= f.n:
        raise ValueError(f"h must lie in 1..{f.n}")
    support = [k for k, _ in phi.terms]
    rvals = {k: r.valuation_lower_bound() for k, r in phi.terms}
    cbound = min(f.c(a).valuation_lower_bound() for a in range(1, f.n + 1))
    total = _zero(f.base, precision)
    for mu in _multisets(sorted(support, reverse=True), h):
        r_mu = f.base.one()
        for part in mu:
            r_mu = r_mu * phi.coeff(part)
        if precision is not None:
            spent = sum(rvals[k] for k in mu)
            # every lam has at least ceil(|mu| / n) parts, each of valuation >= cbound
            parts_min = -(-sum(mu) // f.n)
            if spent + parts_min * cbound >= precision:
                continue
            M = M_mu(f, mu, precision - spent)
        else:
            M = M_mu(f, mu)
        total = total + r_mu * M
    return total.truncate(precision)


def _multisets(values: Sequence[int], size: int):
    """Descending multisets of ``size`` elements drawn from ``values``."""
    out = []

    def rec(start, acc):
        if len(acc) == size:
            out.append(tuple(acc))
            return
        for i in range(start, len(values)):
            acc.append(values[i])
            rec(i, acc)
            acc.pop()

    rec(0, [])
    return out


def minpoly_symmetric(f: EisensteinPoly, phi: PerturbationSeries,
                      precision: int | None = None) -> EisensteinPoly:
    """Coefficients c~_h = E_h(phi(pi_L)) for h = 1..n; exact if ``precision``
    is None and the inputs are exact."""
    return EisensteinPoly(f.base, tuple(E_h_perturbed(f, phi, h, precision)
                                        for h in range(1, f.n + 1)))


# -- checks -----------------------------------------------------------------

def evaluate_at(g: EisensteinPoly, x: QuotientElement) -> QuotientElement:
    """g(x) in K[X]/(f), by Horner on the monic coefficients of g."""
    f = x.f
    acc = QuotientElement.one(f)
    for a in g.monic_coeffs():
        acc = acc * x + QuotientElement.from_poly(f, [a])
    return acc


def root_check(f: EisensteinPoly, phi: PerturbationSeries, g: EisensteinPoly) -> bool:
    """g(phi(pi_L)) == 0 modulo M_K^k in every coordinate, k the smallest
    coefficient precision of g."""
    k = g.min_precision()
    alpha = quot_apply_series(_truncated_poly(f, k), phi, k)
    value = evaluate_at(g, alpha)
    if k is None:
        return all(a.is_exact_zero() for a in value.coords)
    return all(a.truncate(k).is_zero_mod(k) for a in value.coords)


def routes_agree(a: EisensteinPoly, b: EisensteinPoly) -> bool:
    """Coefficientwise agreement to the smaller of the two precisions."""
    for x, y in zip(a.coeffs, b.coeffs):
        precs = [q for q in (x.prec, y.prec) if q is not None]
        if not precs:
            if x != y:
                return False
        elif not (x - y).is_zero_mod(min(precs)):
            return False
    return True

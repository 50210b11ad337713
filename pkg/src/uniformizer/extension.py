"""Eisenstein polynomials, indices of inseparability and Hasse-Herbrand data."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .basefield import INF, BaseFieldConfig, FieldElement, PrecisionTooLow, parse_element, vp


class NotEisenstein(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


def split_degree(n: int, p: int) -> tuple[int, int]:
    """n = u p^nu with p not dividing u; returns (u, nu)."""
    nu = 0
    while n % p == 0:
        n //= p
        nu += 1
    return n, nu


def vbar(k: int, nu: int, p: int) -> int:
    """min(v_p(k), nu)."""
    if k == 0:
        return nu
    return min(int(vp(k, p)), nu)


@dataclass(frozen=True)
class EisensteinPoly:
    """f(X) = X^n - c_1 X^{n-1} + ... + (-1)^n c_n.

    ``coeffs`` holds c_1..c_n (so ``coeffs[h-1]`` is c_h).
    """

    base: BaseFieldConfig
    coeffs: tuple[FieldElement, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("degree must be at least 1")

    @classmethod
    def from_signed(cls, base: BaseFieldConfig, values: Sequence, exact: bool = True) -> "EisensteinPoly":
        """From c_1..c_n given as ints / element literals."""
        return cls(base, tuple(v if isinstance(v, FieldElement) else parse_element(base, v, exact)
                               for v in values))

    @classmethod
    def from_monic(cls, base: BaseFieldConfig, values: Sequence, exact: bool = True) -> "EisensteinPoly":
        """From plain coefficients of X^{n-1}, ..., X^0 of a monic polynomial."""
        elems = [v if isinstance(v, FieldElement) else parse_element(base, v, exact) for v in values]
        n = len(elems)
        return cls(base, tuple(elems[h - 1] if h % 2 == 0 else -elems[h - 1] for h in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def u(self) -> int:
        return split_degree(self.n, self.p)[0]

    @property
    def nu(self) -> int:
        return split_degree(self.n, self.p)[1]

    def c(self, h: int) -> FieldElement:
        return self.coeffs[h - 1]

    def monic_coeffs(self) -> list[FieldElement]:
        """Coefficients of X^{n-1}, ..., X^0."""
        return [self.c(h) if h % 2 == 0 else -self.c(h) for h in range(1, self.n + 1)]

    def min_precision(self) -> int | None:
        precs = [c.prec for c in self.coeffs if c.prec is not None]
        return min(precs) if precs else None

    def to_json(self) -> dict:
        return {"n": self.n, "c": [c.to_json() for c in self.coeffs],
                "precision": [c.prec for c in self.coeffs]}

    @classmethod
    def from_json(cls, base: BaseFieldConfig, data: dict) -> "EisensteinPoly":
        """Inverse of :meth:`to_json`."""
        precs = data.get("precision") or [None] * len(data["c"])
        coeffs = []
        for value, prec in zip(data["c"], precs):
            elem = parse_element(base, value, exact=True)
            coeffs.append(elem if prec is None else elem.with_precision(prec))
        if len(coeffs) != data.get("n", len(coeffs)):
            raise ValueError("coefficient count does not match n")
        return cls(base, tuple(coeffs))

    def __str__(self):
        terms = [f"X^{self.n}"]
        for h, c in enumerate(self.coeffs, start=1):
            sign = "-" if h % 2 else "+"
            terms.append(f"{sign} ({c})X^{self.n - h}")
        return " ".join(terms)


def validate_eisenstein(f: EisensteinPoly) -> list[str]:
    """Violations of the Eisenstein conditions (empty list when valid)."""
    out = []
    for h, c in enumerate(f.coeffs, start=1):
        v = c.valuation()
        if v is None:
            if h == f.n or c.prec < 1:
                raise PrecisionTooLow(f"v(c_{h}) undetermined at precision {c.prec}")
            continue
        if v < 1:
            out.append(f"v(c_{h}) = {v} < 1")
    vn = f.c(f.n).valuation()
    if vn != 1:
        out.append(f"v(c_{f.n}) = {vn} != 1")
    return out


def check_eisenstein(f: EisensteinPoly) -> EisensteinPoly:
    violations = validate_eisenstein(f)
    if violations:
        raise NotEisenstein(violations)
    return f


def decompose(i: int, n: int) -> tuple[int, int]:
    """i = A n - b with 1 <= b <= n."""
    A = -(-i // n)
    b = A * n - i
    if b == 0:
        A += 1
        b = n
    return A, b


@dataclass(frozen=True)
class InseparabilityProfile:
    n: int
    p: int
    u: int
    nu: int
    e_L: int | float  # inf in characteristic p
    raw: tuple  # i_j^{pi_L}: int, inf, or None when not determined
    i: tuple
    A: tuple = field(default=())
    b: tuple = field(default=())

    @classmethod
    def from_indices(cls, n: int, p: int, indices: Sequence[int], e_L=INF, raw=None):
        u, nu = split_degree(n, p)
        indices = tuple(indices)
        if len(indices) != nu + 1:
            raise ValueError(f"need {nu + 1} indices for n={n}, p={p}")
        A, b = zip(*(decompose(i, n) for i in indices))
        return cls(n, p, u, nu, e_L, tuple(raw) if raw is not None else indices, indices, A, b)

    @classmethod
    def from_json(cls, data: dict) -> "InseparabilityProfile":
        """Inverse of :meth:`to_json`."""
        def dec(v):
            return INF if v == "inf" else v
        return cls.from_indices(data["n"], data["p"], data["i"], e_L=dec(data["e_L"]),
                                raw=[dec(v) for v in data["i_raw"]])

    def phi_tilde(self, j: int, x) -> Fraction:
        return self.i[j] + self.p ** j * Fraction(x)

    def phi(self, j: int, x) -> Fraction:
        return min(self.phi_tilde(j0, x) for j0 in range(j + 1))

    def hasse_herbrand(self, x) -> Fraction:
        return self.phi(self.nu, x) / self.n

    def lower_breaks(self) -> list[Fraction]:
        return lower_breaks(self)

    def same_invariants(self, other: "InseparabilityProfile") -> bool:
        return (self.n, self.p, self.i) == (other.n, other.p, other.i)

    def to_json(self) -> dict:
        def enc(v):
            # "inf" for an infinite index, null for one the precision leaves open
            if v is None:
                return None
            return "inf" if v == INF else int(v)
        return {"n": self.n, "u": self.u, "nu": self.nu, "p": self.p,
                "e_L": enc(self.e_L),
                "i_raw": [enc(v) for v in self.raw], "i": list(self.i),
                "A": list(self.A), "b": list(self.b),
                "breaks": [str(x) for x in self.lower_breaks()]}


def _certain_min(terms: list[tuple[float, bool]], what: str):
    """Minimum of (value, certain) pairs; uncertain values are lower bounds."""
    certain = [v for v, ok in terms if ok]
    bounds = [v for v, ok in terms if not ok]
    best = min(certain, default=INF)
    if bounds and (min(bounds) < best or best == INF):
        raise PrecisionTooLow(f"{what} undetermined at the available precision")
    return best


def _raw_terms(f: EisensteinPoly) -> list[list[tuple[float, bool]]]:
    """Per j, the (value, certain) terms n v(c_h) - h over h with v̄_p(h) <= j."""
    n, p, nu = f.n, f.p, f.nu
    by_h = []
    for h in range(1, n + 1):
        c = f.c(h)
        v = c.valuation()
        if v is None:
            by_h.append((vbar(h, nu, p), n * c.prec - h, False))
        else:
            by_h.append((vbar(h, nu, p), n * v - h if v != INF else INF, True))
    return [[(val, ok) for vb, val, ok in by_h if vb <= j] for j in range(nu + 1)]


def indices_raw(f: EisensteinPoly) -> list:
    """i_j^{pi_L} for 0 <= j <= nu (``inf`` if every eligible c_h is 0)."""
    return [_certain_min(terms, f"i_{j}^pi") for j, terms in enumerate(_raw_terms(f))]


def indices(f: EisensteinPoly) -> InseparabilityProfile:
    """Indices of inseparability with their A_j, b_j decomposition.

    An undetermined i_j^pi is tolerated as long as its lower bound cannot
    affect the minimum defining i_j.
    """
    terms = _raw_terms(f)
    n, nu = f.n, f.nu
    e_L = INF if f.base.charp else n * f.base.e
    raw = []
    for j, tj in enumerate(terms):
        try:
            raw.append(_certain_min(tj, f"i_{j}^pi"))
        except PrecisionTooLow:
            raw.append(None)
    out = []
    for j in range(nu + 1):
        # in characteristic p the shifted terms carry e_L = inf and drop out
        if e_L == INF:
            shifted = terms[j]
        else:
            shifted = [(val + (jp - j) * e_L, ok) for jp in range(j, nu + 1) for val, ok in terms[jp]]
        best = _certain_min(shifted, f"i_{j}")
        if best == INF:
            raise ValueError(f"i_{j} is infinite; the extension is not separable")
        out.append(int(best))
    return InseparabilityProfile.from_indices(n, f.p, out, e_L=e_L, raw=raw)


def phi_tilde(profile: InseparabilityProfile, j: int, x) -> Fraction:
    return profile.phi_tilde(j, x)


def phi(profile: InseparabilityProfile, j: int, x) -> Fraction:
    return profile.phi(j, x)


def hasse_herbrand(profile: InseparabilityProfile, x) -> Fraction:
    return profile.hasse_herbrand(x)


def lower_breaks(profile: InseparabilityProfile) -> list[Fraction]:
    """x > 0 where at least two of the lines i_j + p^j x attain the minimum."""
    p, idx = profile.p, profile.i
    candidates = set()
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            x = Fraction(idx[a] - idx[b], p ** b - p ** a)
            if x > 0:
                candidates.add(x)
    breaks = []
    for x in sorted(candidates):
        values = [profile.phi_tilde(j, x) for j in range(len(idx))]
        low = min(values)
        if sum(1 for v in values if v == low) >= 2:
            breaks.append(x)
    return breaks


def phi_table(profile: InseparabilityProfile, ell_max: int) -> list[list[int]]:
    """Rows [l, phi~_0(l)..phi~_nu(l), phi_0(l)..phi_nu(l)] for l = 1..ell_max."""
    rows = []
    for ell in range(1, ell_max + 1):
        tildes = [profile.phi_tilde(j, ell) for j in range(profile.nu + 1)]
        phis = [profile.phi(j, ell) for j in range(profile.nu + 1)]
        rows.append([ell] + [int(v) for v in tildes + phis])
    return rows


def format_phi_table(profile: InseparabilityProfile, ell_max: int) -> str:
    nu = profile.nu
    header = ["l"] + [f"phi~_{j}" for j in range(nu + 1)] + [f"phi_{j}" for j in range(nu + 1)]
    rows = [header] + [[str(v) for v in row] for row in phi_table(profile, ell_max)]
    widths = [max(len(r[k]) for r in rows) for k in range(len(header))]
    return "\n".join(" | ".join(cell.rjust(wd) for cell, wd in zip(r, widths)) for r in rows)


def index_valuation_consistent(profile: InseparabilityProfile) -> bool:
    """With m = v̄_p(i_j): if m <= j then i_j = i_m = i_j^pi = i_m^pi; if m > j
    the field has characteristic 0 and i_j = i_m^pi + (m - j) e_L."""
    for j, ij in enumerate(profile.i):
        if j == profile.nu:
            continue
        m = vbar(ij, profile.nu, profile.p)
        if m <= j:
            if not (ij == profile.i[m] == profile.raw[j] == profile.raw[m]):
                return False
        elif profile.e_L == INF or ij != profile.raw[m] + (m - j) * profile.e_L:
            return False
    return True


def ceil_frac(x) -> int:
    return math.ceil(Fraction(x))

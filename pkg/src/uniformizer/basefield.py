"""Precision-tracked arithmetic in a local field K with residue field F_p.

Two backends are supported:

* ``char0``: O_K = Z_p[pi] with pi^e = p.  An element is stored as ``e``
  integer coordinates ``a_0 + a_1 pi + ... + a_{e-1} pi^{e-1}``.  Since the
  summands have pairwise distinct valuations mod ``e`` there is never any
  cancellation, so ``v(a) = min(e * v_p(a_i) + i)``.
* ``charp``: O_K = F_p[[t]].  An element is a list of coefficients of
  ``1, t, t^2, ...`` reduced mod ``p``.

Every element carries an absolute precision ``prec`` (it is known modulo
``pi^prec``) or ``None`` when it is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

INF = math.inf


class PrecisionTooLow(ArithmeticError):
    """Raised instead of answering from truncated data."""


class NotAUnit(ArithmeticError):
    pass


class ConfigMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def vp(m: int, p: int) -> float:
    """p-adic valuation of an integer; ``inf`` for 0."""
    if m == 0:
        return INF
    m = abs(m)
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


@dataclass(frozen=True)
class BaseFieldConfig:
    """The base field K.

    ``backend`` is ``"char0"`` (with ramification index ``e`` over Q_p) or
    ``"charp"`` (Laurent series over F_p; ``e`` is ignored and stored as 1).
    ``precision`` is the default absolute precision N for inexact values.
    """

    p: int
    backend: str = "char0"
    e: int = 1
    precision: int = 20

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.backend not in ("char0", "charp"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.e < 1:
            raise ValueError("e must be >= 1")
        if self.backend == "charp" and self.e != 1:
            object.__setattr__(self, "e", 1)
        if self.precision < 1:
            raise ValueError("precision must be >= 1")

    @property
    def charp(self) -> bool:
        return self.backend == "charp"

    def with_precision(self, precision: int) -> "BaseFieldConfig":
        return BaseFieldConfig(self.p, self.backend, self.e, precision)

    def same_field(self, other: "BaseFieldConfig") -> bool:
        return (self.p, self.backend, self.e) == (other.p, other.backend, other.e)

    def describe(self) -> str:
        if self.charp:
            return f"F_{self.p}((t))"
        if self.e == 1:
            return f"Q_{self.p}"
        return f"Q_{self.p}(pi), pi^{self.e} = {self.p}"

    # constructors -------------------------------------------------------

    def zero(self) -> "FieldElement":
        return FieldElement(self, (), None)

    def one(self) -> "FieldElement":
        return self.from_integer(1, exact=True)

    def uniformizer(self) -> "FieldElement":
        if self.charp:
            return FieldElement(self, (0, 1), None)
        if self.e == 1:
            return FieldElement(self, (self.p,), None)
        return FieldElement(self, (0, 1) + (0,) * (self.e - 2), None)

    def from_integer(self, m: int, exact: bool = False) -> "FieldElement":
        """Image of the integer ``m`` in O_K.

        Inexact by default (known to the working precision); ``exact=True``
        keeps it exact so that it never limits the precision of products.
        """
        prec = None if exact else self.precision
        if self.charp:
            return FieldElement(self, (m,), prec)
        return FieldElement(self, (m,) + (0,) * (self.e - 1), prec)

    def from_coords(self, coords: Sequence[int], prec: int | None = None) -> "FieldElement":
        return FieldElement(self, tuple(int(c) for c in coords), prec)

    def pi_power(self, k: int) -> "FieldElement":
        if k < 0:
            raise ValueError("negative power of the uniformizer")
        return self.uniformizer() ** k


Scalar = Union[int, "FieldElement"]


class FieldElement:
    """Immutable element of O_K known modulo pi^prec (``prec=None``: exact)."""

    __slots__ = ("cfg", "coords", "prec")

    def __init__(self, cfg: BaseFieldConfig, coords: Iterable[int], prec: int | None):
        if prec is not None and prec < 0:
            prec = 0
        object.__setattr__(self, "cfg", cfg)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "coords", _normalize(cfg, tuple(coords), prec))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    # -- inspection -------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.prec is None

    def is_exact_zero(self) -> bool:
        return self.exact and not any(self.coords)

    def valuation(self) -> int | float | None:
        """v_K of the element: an int when certain, ``inf`` for the exact
        zero, ``None`` when it is indistinguishable from 0 at its precision."""
        v = self._raw_valuation()
        if v == INF:
            return INF if self.exact else None
        return v

    def valuation_lower_bound(self) -> int | float:
        v = self._raw_valuation()
        if v == INF:
            return INF if self.exact else self.prec
        return v

    def _raw_valuation(self) -> int | float:
        cfg = self.cfg
        if cfg.charp:
            for i, c in enumerate(self.coords):
                if c:
                    return i
            return INF
        best = INF
        for i, c in enumerate(self.coords):
            if c:
                best = min(best, cfg.e * vp(c, cfg.p) + i)
        return best

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def is_zero_mod(self, k: int) -> bool:
        """True iff v_K(self) >= k.  Requires precision >= k."""
        if self.prec is not None and self.prec < k:
            raise PrecisionTooLow(f"element known to precision {self.prec}, need {k}")
        return self._raw_valuation() >= k

    # -- precision --------------------------------------------------------

    def truncate(self, k: int | None) -> "FieldElement":
        """Forget everything beyond pi^k (never raises precision)."""
        if k is None:
            return self
        if self.prec is not None and self.prec <= k:
            return self
        return FieldElement(self.cfg, self.coords, k)

    def with_precision(self, k: int | None) -> "FieldElement":
        """Declare the stored representative known to precision k.

        Only meaningful for values whose correctness to that precision is
        established elsewhere (e.g. Newton iteration).
        """
        return FieldElement(self.cfg, self.coords, k)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other: Scalar) -> "FieldElement":
        if isinstance(other, FieldElement):
            if not self.cfg.same_field(other.cfg):
                raise ConfigMismatch(f"{self.cfg.describe()} vs {other.cfg.describe()}")
            return other
        if isinstance(other, int):
            return self.cfg.from_integer(other, exact=True)
        return NotImplemented

    def __add__(self, other: Scalar) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.cfg, _add(self.coords, other.coords, 1), _min_prec(self.prec, other.prec))

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.cfg, _add(self.coords, other.coords, -1), _min_prec(self.prec, other.prec))

    def __rsub__(self, other: Scalar) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.cfg, tuple(-c for c in self.coords), self.prec)

    def __mul__(self, other: Scalar) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        va, vb = self.valuation_lower_bound(), other.valuation_lower_bound()
        pa = INF if self.prec is None else self.prec
        pb = INF if other.prec is None else other.prec
        prec = min(va + pb, vb + pa)
        prec = None if prec == INF else int(prec)
        return FieldElement(self.cfg, _mul(self.cfg, self.coords, other.coords, prec), prec)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FieldElement":
        if k < 0:
            raise ValueError("negative exponent")
        result = self.cfg.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "FieldElement":
        """Inverse of a unit; inexact results carry the input's precision
        (or the working precision when the input is exact)."""
        if self.valuation() != 0:
            raise NotAUnit(f"{self} is not a unit")
        target = self.cfg.precision if self.prec is None else self.prec
        return FieldElement(self.cfg, _inverse(self.cfg, self.coords, target), target)

    def shift_down(self, k: int) -> "FieldElement":
        """Exact division by pi^k of an element with valuation >= k."""
        if k == 0:
            return self
        if self._raw_valuation() < k:
            raise ArithmeticError("element not divisible by pi^%d" % k)
        cfg = self.cfg
        prec = None if self.prec is None else self.prec - k
        if cfg.charp:
            return FieldElement(cfg, self.coords[k:], prec)
        # x / pi^k = x * pi^((e-1)k) / p^k
        y = FieldElement(cfg, self.coords, None) * cfg.pi_power((cfg.e - 1) * k)
        pk = cfg.p ** k
        assert all(c % pk == 0 for c in y.coords)
        return FieldElement(cfg, tuple(c // pk for c in y.coords), prec)

    def divide(self, other: "FieldElement") -> "FieldElement":
        """self / other, provided v(self) >= v(other) and v(other) is certain."""
        v = other.valuation()
        if v is None:
            raise PrecisionTooLow("divisor indistinguishable from zero")
        if v == INF:
            raise ZeroDivisionError("division by exact zero")
        return self.shift_down(v) * other.shift_down(v).inverse()

    # -- comparison and display ------------------------------------------

    def __eq__(self, other) -> bool:
        """Identity of representations (same value *and* same precision)."""
        if isinstance(other, int):
            other = self.cfg.from_integer(other, exact=True)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return (self.cfg.same_field(other.cfg) and self.prec == other.prec
                and _strip(self.coords) == _strip(other.coords))

    def __hash__(self):
        return hash((self.cfg.p, self.cfg.backend, self.cfg.e, self.prec, _strip(self.coords)))

    def congruent(self, other: Scalar, k: int) -> bool:
        return congruent(self, other, k)

    def to_json(self):
        """JSON form: integer for Q_p, coordinate list for ramified fields,
        polynomial string in t for Laurent series."""
        if self.cfg.charp:
            return format_charp(self.coords, self.prec)
        if self.cfg.e == 1:
            return self.coords[0] if self.coords else 0
        return list(self.coords) + [0] * (self.cfg.e - len(self.coords))

    def __repr__(self):
        body = self.to_json()
        suffix = "" if self.prec is None else f" + O(pi^{self.prec})"
        return f"{body}{suffix}"


def congruent(a: FieldElement, b: Scalar, k: int) -> bool:
    """a == b mod M_K^k.  Raises PrecisionTooLow if either side is known
    to less than k."""
    if isinstance(b, int):
        b = a.cfg.from_integer(b, exact=True)
    for x in (a, b):
        if x.prec is not None and x.prec < k:
            raise PrecisionTooLow(f"operand known to precision {x.prec} < {k}")
    return (a - b).is_zero_mod(k)


# -- coordinate helpers ---------------------------------------------------

def _strip(coords: tuple) -> tuple:
    end = len(coords)
    while end and coords[end - 1] == 0:
        end -= 1
    return coords[:end]


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add(a: tuple, b: tuple, sign: int) -> tuple:
    if len(a) < len(b):
        a = a + (0,) * (len(b) - len(a))
    elif len(b) < len(a):
        b = b + (0,) * (len(a) - len(b))
    return tuple(x + sign * y for x, y in zip(a, b))


def _normalize(cfg: BaseFieldConfig, coords: tuple, prec: int | None) -> tuple:
    p = cfg.p
    if cfg.charp:
        if prec is not None:
            coords = coords[:prec]
        return _strip(tuple(c % p for c in coords))
    e = cfg.e
    if len(coords) > e:
        # fold pi^e = p
        folded = [0] * e
        for i, c in enumerate(coords):
            q, r = divmod(i, e)
            folded[r] += c * p ** q
        coords = tuple(folded)
    elif len(coords) < e:
        coords = coords + (0,) * (e - len(coords))
    if prec is None:
        return coords
    out = []
    for i, c in enumerate(coords):
        need = -(-(prec - i) // e)  # ceil((prec - i) / e)
        out.append(c % p ** need if need > 0 else 0)
    return tuple(out)


def _mul(cfg: BaseFieldConfig, a: tuple, b: tuple, prec: int | None) -> tuple:
    if not a or not b:
        return ()
    if cfg.charp:
        la, lb = len(a), len(b)
        size = la + lb - 1 if prec is None else min(la + lb - 1, prec)
        out = [0] * max(size, 0)
        p = cfg.p
        for i, x in enumerate(a):
            if not x or i >= size:
                continue
            for j, y in enumerate(b):
                if i + j >= size:
                    break
                out[i + j] = (out[i + j] + x * y) % p
        return tuple(out)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _inverse(cfg: BaseFieldConfig, coords: tuple, target: int) -> tuple:
    p = cfg.p
    if cfg.charp:
        a = list(coords[:target]) + [0] * max(0, target - len(coords))
        inv0 = pow(a[0], -1, p)
        b = [0] * target
        for k in range(target):
            s = 1 if k == 0 else 0
            for i in range(1, k + 1):
                s -= a[i] * b[k - i]
            b[k] = s * inv0 % p
        return tuple(b)
    # Newton iteration x <- x (2 - a x) on exact representatives
    a = FieldElement(cfg, coords, None)
    x = FieldElement(cfg, (pow(coords[0], -1, p),), None)
    known = 1
    while known < target:
        known = min(2 * known, target)
        x = (x * (2 - a * x)).truncate(known).with_precision(None)
    return x.coords


# -- parsing / formatting -------------------------------------------------

def format_charp(coords: Sequence[int], prec: int | None) -> str:
    terms = []
    for i, c in enumerate(coords):
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append("t" if c == 1 else f"{c}*t")
        else:
            terms.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
    body = " + ".join(terms) if terms else "0"
    if prec is not None:
        body += f" (mod t^{prec})"
    return body


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


def parse_element(cfg: BaseFieldConfig, text, exact: bool = True) -> FieldElement:
    """Parse an element from its textual or JSON form.

    Accepted forms: an integer; a coordinate list ``[a0,...,a_{e-1}]`` for
    ramified char-0 fields; a polynomial in ``t`` such as ``1 + 2*t^3`` for
    Laurent series, optionally followed by ``(mod t^N)``.
    """
    prec = None if exact else cfg.precision
    if isinstance(text, bool):
        raise ParseError("boolean is not a field element", str(text), 0)
    if isinstance(text, int):
        return cfg.from_integer(text, exact=exact)
    if isinstance(text, (list, tuple)):
        if cfg.charp:
            return FieldElement(cfg, tuple(int(c) for c in text), prec)
        if len(text) > cfg.e:
            raise ParseError(f"expected at most {cfg.e} coordinates", str(text), 0)
        return FieldElement(cfg, tuple(int(c) for c in text), prec)
    s = str(text).strip()
    if not s:
        raise ParseError("empty element", s, 0)
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError("unterminated coordinate list", s, len(s))
        parts = [x.strip() for x in s[1:-1].split(",") if x.strip()]
        try:
            return parse_element(cfg, [int(x) for x in parts], exact)
        except ValueError:
            raise ParseError("bad coordinate", s, 1) from None
    if "t" in s:
        if not cfg.charp:
            raise ParseError("'t' is only valid for the laurent backend", s, s.index("t"))
        coords, mod = _parse_tpoly(s)
        return FieldElement(cfg, coords, mod if mod is not None else prec)
    try:
        return cfg.from_integer(int(s), exact=exact)
    except ValueError:
        raise ParseError("not an integer", s, 0) from None


def _parse_tpoly(s: str):
    mod = None
    body = s
    if "(mod" in s:
        idx = s.index("(mod")
        body, tail = s[:idx], s[idx:]
        tail = tail.replace(" ", "")
        if not (tail.startswith("(modt^") and tail.endswith(")")):
            raise ParseError("expected '(mod t^N)'", s, idx)
        try:
            mod = int(tail[len("(modt^"):-1])
        except ValueError:
            raise ParseError("bad modulus", s, idx) from None
    coords: dict[int, int] = {}
    compact = body.replace(" ", "")
    i = 0
    n = len(compact)
    if n == 0:
        raise ParseError("empty polynomial", s, 0)
    while i < n:
        sign = 1
        if compact[i] in "+-":
            sign = -1 if compact[i] == "-" else 1
            i += 1
        start = i
        while i < n and compact[i] not in "+-":
            i += 1
        term = compact[start:i]
        if not term:
            raise ParseError("empty term", s, start)
        coef, _, rest = term.partition("*") if "*" in term else (
            (term, "", "") if "t" not in term else ("1", "", term))
        try:
            c = int(coef)
        except ValueError:
            raise ParseError(f"bad coefficient {coef!r}", s, start) from None
        if rest == "":
            deg = 0
        elif rest == "t":
            deg = 1
        elif rest.startswith("t^"):
            try:
                deg = int(rest[2:])
            except ValueError:
                raise ParseError(f"bad exponent in {rest!r}", s, start) from None
        else:
            raise ParseError(f"bad term {term!r}", s, start)
        coords[deg] = coords.get(deg, 0) + sign * c
    size = max(coords) + 1
    return tuple(coords.get(k, 0) for k in range(size)), mod

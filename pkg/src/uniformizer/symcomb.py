"""Partitions, cycle digraphs and the coefficients d_{lambda mu}.

``d_coeff(lam, mu)`` is the coefficient of ``e_lam = e_{lam_1} ... e_{lam_k}``
in the expansion of the monomial symmetric polynomial ``m_mu`` in elementary
symmetric polynomials.  It is a signed count of admissible tilings of cycle
digraphs, which we evaluate in two ways:

``method="enumerate"``
    literal: for every cycle digraph on ``w`` vertices, enumerate concrete
    tiling pairs, keep those with trivial stabilizer under the automorphism
    group of the digraph and divide by the group order (the action on
    admissible pairs is free).  Capped at ``w <= MAX_ENUM_WEIGHT``.

``method="components"``
    an admissible configuration is a set of pairwise non-isomorphic connected
    configurations, each of which is an aperiodic pair of tilings of a single
    cycle up to rotation.  Those are counted with a necklace-style Moebius
    inversion, and the signed sum over sets is a knapsack over
    (sub-multiset of lam, sub-multiset of mu) classes.  Used for large weights.

``oracle_psi_expansion`` is independent of both: it reduces ``m_mu`` by
repeatedly subtracting the leading term expressed as a product of elementary
symmetric polynomials.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from functools import lru_cache
from typing import Iterator, Sequence

MAX_ENUM_WEIGHT = 16


class WeightMismatch(ValueError):
    pass


class TooManyParts(ValueError):
    pass


class WeightCapExceeded(ValueError):
    pass


# -- partitions -----------------------------------------------------------

Partition = tuple  # parts sorted in descending order


def partition(parts: Sequence[int]) -> Partition:
    parts = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x < 1 for x in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    return parts


def partitions_of(w: int, max_part: int | None = None, num_parts: int | None = None) -> list[Partition]:
    """All partitions of w with parts <= max_part (and exactly num_parts parts
    if given), in lexicographically descending order."""
    if max_part is None:
        max_part = w
    out: list[Partition] = []

    def rec(rem: int, cap: int, acc: list[int]):
        if rem == 0:
            if num_parts is None or len(acc) == num_parts:
                out.append(tuple(acc))
            return
        if num_parts is not None and len(acc) >= num_parts:
            return
        for part in range(min(rem, cap), 0, -1):
            acc.append(part)
            rec(rem - part, part, acc)
            acc.pop()

    if w >= 0:
        rec(w, max_part, [])
    return out


def scale_partition(lam: Sequence[int], k: int, mode: str) -> Partition:
    """``multiply_parts`` gives k.lam, ``repeat`` gives k*lam (k copies)."""
    if mode == "multiply_parts":
        return partition([k * x for x in lam])
    if mode == "repeat":
        return partition(list(lam) * k)
    raise ValueError(f"unknown mode {mode!r}")


def is_repeat_of(mu: Sequence[int], k: int) -> bool:
    """True iff mu = k * mu' for some partition mu'."""
    return all(m % k == 0 for m in Counter(mu).values())


# -- cycle digraphs and tilings ------------------------------------------

def cycle_digraphs(w: int) -> list[Partition]:
    """Isomorphism classes of cycle digraphs on w vertices (cycle-length
    multisets)."""
    return partitions_of(w)


def digraph_sign(cycles: Sequence[int]) -> int:
    return -1 if (sum(cycles) - len(cycles)) % 2 else 1


def _cycle_tilings(length: int, parts: Counter) -> Iterator[tuple[tuple[int, int], ...]]:
    """Tilings of one labelled cycle by paths, using a sub-multiset of parts.

    Yields (start, size) tuples together with consumption implicitly; the
    caller recomputes consumption.  The path covering vertex 0 is anchored
    by its start so that every tiling is produced exactly once.
    """
    sizes = sorted(parts)
    for first in sizes:
        if parts[first] == 0 or first > length:
            continue
        for offset in range(first):
            start = (-offset) % length
            parts[first] -= 1
            for rest in _fill_arc(length - first, parts):
                yield ((start, first),) + tuple(
                    ((start + first + pos) % length, size) for pos, size in rest)
            parts[first] += 1


def _fill_arc(remaining: int, parts: Counter, pos: int = 0):
    if remaining == 0:
        yield ()
        return
    for size in sorted(parts):
        if parts[size] and size <= remaining:
            parts[size] -= 1
            for rest in _fill_arc(remaining - size, parts, pos + size):
                yield ((pos, size),) + rest
            parts[size] += 1


def enumerate_tilings(cycles: Sequence[int], lam: Sequence[int]) -> list[frozenset]:
    """All lam-tilings of the cycle digraph with the given cycle lengths.

    Vertices of cycle ``c`` are ``0..len-1`` with edges ``i -> i+1``; a path is
    ``(c, start, size)``.  Order is deterministic.
    """
    cycles = tuple(cycles)
    if sum(cycles) != sum(lam):
        raise WeightMismatch(f"sum{tuple(lam)} != {sum(cycles)} vertices")
    out: list[frozenset] = []
    parts = Counter(lam)

    def rec(ci: int, acc: list):
        if ci == len(cycles):
            if not +parts:
                out.append(frozenset(acc))
            return
        # materialize: the generator mutates ``parts`` while suspended
        for tiling in list(_cycle_tilings(cycles[ci], parts)):
            used = Counter(size for _, size in tiling)
            parts.subtract(used)
            acc.extend((ci, start, size) for start, size in tiling)
            rec(ci + 1, acc)
            del acc[len(acc) - len(tiling):]
            parts.update(used)

    rec(0, [])
    return sorted(set(out), key=lambda s: sorted(s))


def automorphisms(cycles: Sequence[int]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Automorphism group of a cycle digraph as (cycle permutation, rotations).

    The identity is listed first.
    """
    cycles = tuple(cycles)
    groups: dict[int, list[int]] = {}
    for i, c in enumerate(cycles):
        groups.setdefault(c, []).append(i)
    perms_per_group = [list(itertools.permutations(idx)) for idx in groups.values()]
    group_lists = list(groups.values())
    out = []
    for choice in itertools.product(*perms_per_group):
        perm = list(range(len(cycles)))
        for src, dst in zip(group_lists, choice):
            for a, b in zip(src, dst):
                perm[a] = b
        for rot in itertools.product(*(range(c) for c in cycles)):
            out.append((tuple(perm), rot))
    return out


def _apply(g, cycles, tiling):
    perm, rot = g
    return frozenset((perm[c], (s + rot[c]) % cycles[perm[c]], size) for c, s, size in tiling)


def eta(cycles: Sequence[int], lam: Sequence[int], mu: Sequence[int]) -> int:
    """Number of isomorphism classes of admissible (lam, mu)-tilings."""
    cycles = tuple(sorted(cycles, reverse=True))
    w = sum(cycles)
    if sum(lam) != w or sum(mu) != w:
        raise WeightMismatch("partitions and digraph have different weights")
    if w > MAX_ENUM_WEIGHT:
        raise WeightCapExceeded(f"weight {w} exceeds enumeration cap {MAX_ENUM_WEIGHT}")
    s_tilings = enumerate_tilings(cycles, lam)
    if not s_tilings:
        return 0
    t_tilings = enumerate_tilings(cycles, mu)
    if not t_tilings:
        return 0
    group = automorphisms(cycles)
    nontrivial = group[1:]
    admissible = 0
    for s in s_tilings:
        # automorphisms fixing S, then check T among those only
        fix_s = [g for g in nontrivial if _apply(g, cycles, s) == s]
        for t in t_tilings:
            if not any(_apply(g, cycles, t) == t for g in fix_s):
                admissible += 1
    order = len(group)
    assert admissible % order == 0, "automorphisms must act freely on admissible pairs"
    return admissible // order


# -- d coefficients -------------------------------------------------------

def _parity(lam, mu) -> int:
    return -1 if (len(lam) + len(mu)) % 2 else 1


def d_coeff(lam: Sequence[int], mu: Sequence[int], method: str = "components") -> int:
    """Coefficient of e_lam in m_mu (symmetric in lam and mu)."""
    lam, mu = partition(lam), partition(mu)
    if sum(lam) != sum(mu):
        raise WeightMismatch(f"{lam} and {mu} have different weights")
    if method == "enumerate":
        return _d_enumerate(lam, mu)
    if method == "components":
        return _d_components(lam, mu)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def _d_enumerate(lam: Partition, mu: Partition) -> int:
    w = sum(lam)
    if w > MAX_ENUM_WEIGHT:
        raise WeightCapExceeded(f"weight {w} exceeds enumeration cap {MAX_ENUM_WEIGHT}")
    total = sum(digraph_sign(g) * eta(g, lam, mu) for g in cycle_digraphs(w))
    return _parity(lam, mu) * total


def _mobius(n: int) -> int:
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def _cycle_tiling_count(mults: tuple[tuple[int, int], ...]) -> int:
    """Number of tilings of a labelled cycle by paths with the given
    (size, multiplicity) pairs: L (k-1)! / prod m_i!."""
    length = sum(s * m for s, m in mults)
    k = sum(m for _, m in mults)
    den = 1
    for _, m in mults:
        den *= math.factorial(m)
    num = length * math.factorial(k - 1)
    assert num % den == 0
    return num // den


@lru_cache(maxsize=None)
def primitive_types(alpha: tuple, beta: tuple) -> int:
    """Number of rotation classes of aperiodic (alpha, beta)-tilings of a
    single cycle.  ``alpha``/``beta`` are (size, multiplicity) tuples."""
    length = sum(s * m for s, m in alpha)
    g = 0
    for _, m in alpha + beta:
        g = math.gcd(g, m)
    total = 0
    for d in range(1, g + 1):
        if g % d:
            continue
        mob = _mobius(d)
        if mob:
            a = tuple((s, m // d) for s, m in alpha)
            b = tuple((s, m // d) for s, m in beta)
            total += mob * _cycle_tiling_count(a) * _cycle_tiling_count(b)
    assert total % length == 0
    return total // length


def _submultisets(mults: tuple[tuple[int, int], ...]):
    """Nonempty sub-multisets as (size, multiplicity) tuples with the sum."""
    ranges = [range(m + 1) for _, m in mults]
    for choice in itertools.product(*ranges):
        sub = tuple((s, c) for (s, _), c in zip(mults, choice) if c)
        if sub:
            yield sub, sum(s * c for s, c in sub)


def _mults(part: Partition) -> tuple[tuple[int, int], ...]:
    c = Counter(part)
    return tuple(sorted(c.items(), reverse=True))


def _packer(mults: list[int]):
    """Pack a vector of nonnegative counts into one int, each field carrying
    a guard bit above its value.  Subtracting a packed vector keeps every
    guard bit set iff no coordinate went negative."""
    offsets, guard, shift = [], 0, 0
    for m in mults:
        width = m.bit_length() + 1
        offsets.append(shift)
        guard |= 1 << (shift + width - 1)
        shift += width

    def pack(vec):
        return sum(x << off for x, off in zip(vec, offsets))

    return pack, guard


@lru_cache(maxsize=None)
def _d_components(lam: Partition, mu: Partition) -> int:
    lam_m, mu_m = _mults(lam), _mults(mu)
    by_sum: dict[int, list] = {}
    for sub, total in _submultisets(mu_m):
        by_sum.setdefault(total, []).append(sub)
    sizes = [("l", s) for s, _ in lam_m] + [("m", s) for s, _ in mu_m]
    mults = [m for _, m in lam_m] + [m for _, m in mu_m]
    pack, guard = _packer(mults)
    classes = []
    for alpha, total in _submultisets(lam_m):
        for beta in by_sum.get(total, ()):
            count = primitive_types(alpha, beta)
            if count:
                used = dict((("l", s), c) for s, c in alpha)
                used.update((("m", s), c) for s, c in beta)
                vec = [used.get(key, 0) for key in sizes]
                step = pack(vec)
                # at most this many types of one class fit inside lam and mu
                kmax = min(count, min(m // c for m, c in zip(mults, vec) if c))
                sign = -1 if (total - 1) % 2 else 1
                weights = [math.comb(count, k) * sign ** k for k in range(kmax + 1)]
                classes.append((step, weights))
    # knapsack over classes: choose k distinct types from each class
    dp = {guard + pack(mults): 1}
    for step, weights in classes:
        nxt = dict(dp)
        for state, val in dp.items():
            cur = state
            for wk in weights[1:]:
                cur -= step
                if cur & guard != guard:
                    break
                nxt[cur] = nxt.get(cur, 0) + wk * val
        dp = {k: v for k, v in nxt.items() if v}
    return _parity(lam, mu) * dp.get(guard, 0)


# -- closed forms ---------------------------------------------------------

def _shapes(part: Partition):
    """Ways to read a partition as r copies of x plus one copy of y (x != y),
    r >= 0, as (x, r, y); and as r >= 1 copies of x alone, as (x, r, None)."""
    c = Counter(part)
    out = []
    if len(c) == 1:
        (x, r), = c.items()
        out.append((x, r, None))
        if r == 1:
            out.append((None, 0, x))
    elif len(c) == 2:
        (x1, r1), (x2, r2) = c.items()
        if r2 == 1:
            out.append((x1, r1, x2))
        if r1 == 1:
            out.append((x2, r2, x1))
    return out


def d_closed_form(lam: Sequence[int], mu: Sequence[int]) -> int | None:
    """d_{lam mu} from the two-cycle analysis when it applies, else None.

    Covered: lam = {a x r, c} (a != c, r >= 1), mu = {b x s, d} (b != d,
    s >= 0), w = ra + c = sb + d, a > sb; and lam = {a x r}, same mu, a > sb,
    where only the single w-cycle contributes (eta = a).
    """
    lam, mu = partition(lam), partition(mu)
    w = sum(lam)
    if w != sum(mu):
        return None
    for a, r, c in _shapes(lam):
        if a is None or r < 1:
            continue
        for b, s, d in _shapes(mu):
            if d is None:
                continue
            sb = 0 if b is None else s * b
            if not a > sb:
                continue
            if c is None:
                return (-1) ** (r + s + w) * a
            if b is not None and c % b == 0 and sb >= c:
                return (-1) ** (r + s + w + 1) * (w - a * b)
            return (-1) ** (r + s + w + 1) * w
    return None


def eta_single_cycle_closed_form(lam: Sequence[int], mu: Sequence[int]) -> int | None:
    """eta on a single w-cycle for the shapes with a known value: w when
    lam = {a x r, c}, mu = {b x s, d}; a when lam = {a x r}, mu = {b x s, d}."""
    lam, mu = partition(lam), partition(mu)
    if sum(lam) != sum(mu):
        return None
    mu_shapes = [m for m in _shapes(mu) if m[2] is not None]
    if not mu_shapes:
        return None
    for a, r, c in _shapes(lam):
        if a is None:
            continue
        if c is None:
            return a
        if r >= 1:
            return sum(lam)
    return None


# -- psi expansions -------------------------------------------------------

def psi_expansion(mu: Sequence[int], n: int, method: str = "components") -> dict[Partition, int]:
    """{lam: d_{lam mu}} over partitions lam of |mu|-weight with parts <= n."""
    mu = partition(mu)
    if len(mu) > n:
        raise TooManyParts(f"{mu} has more than {n} parts")
    out = {}
    for lam in partitions_of(sum(mu), max_part=n):
        d = d_coeff(lam, mu, method=method)
        if d:
            out[lam] = d
    return out


def _elementary(n: int, k: int) -> dict[tuple, int]:
    poly = {}
    for idx in itertools.combinations(range(n), k):
        exps = [0] * n
        for i in idx:
            exps[i] = 1
        poly[tuple(exps)] = 1
    return poly


def _polymul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def oracle_psi_expansion(mu: Sequence[int], n: int) -> dict[Partition, int]:
    """Expansion of m_mu in e_1..e_n by leading-term reduction in n variables."""
    mu = partition(mu)
    if len(mu) > n:
        raise TooManyParts(f"{mu} has more than {n} parts")
    exps = tuple(mu) + (0,) * (n - len(mu))
    poly = {perm: 1 for perm in set(itertools.permutations(exps))}
    elem = [None] + [_elementary(n, k) for k in range(1, n + 1)]
    cache: dict[Partition, dict] = {}
    result: dict[Partition, int] = {}
    while poly:
        lead = max(poly)
        coeff = poly[lead]
        lam = []
        for i in range(n):
            nxt = lead[i + 1] if i + 1 < n else 0
            lam.extend([i + 1] * (lead[i] - nxt))
        lam = partition(lam)
        if lam not in cache:
            prod = {(0,) * n: 1}
            for part in lam:
                prod = _polymul(prod, elem[part])
            cache[lam] = prod
        for e, c in cache[lam].items():
            v = poly.get(e, 0) - coeff * c
            if v:
                poly[e] = v
            else:
                poly.pop(e, None)
        result[lam] = result.get(lam, 0) + coeff
    return {k: v for k, v in sorted(result.items(), reverse=True) if v}

"""Prime tables, selector-defined prime subsets and prime partial sums.

A ``PrimeTable`` is an exact Eratosthenes sieve up to a limit (odd-only byte
mask, built segmented above 10^7).  A ``PrimeSubset`` pairs a table with an
immutable selector; every sieve formula in the package draws its primes and
its partial sums (theta, Mertens-type) from here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapacityError, DegenerateInputError, DomainError

DEFAULT_LIMIT_CAP = 2**40
_DIRECT_LIMIT = 10**7
_SEGMENT_ODDS = 1 << 21


def _odd_sieve_direct(limit: int) -> np.ndarray:
    """Mask over odd n in [1, limit]; index i corresponds to n = 2i + 1."""
    size = (limit + 1) // 2
    mask = np.ones(size, dtype=bool)
    mask[0] = False  # n = 1
    for p in range(3, math.isqrt(limit) + 1, 2):
        if mask[p // 2]:
            start = (p * p) // 2
            mask[start::p] = False
    return mask


def _odd_sieve_segmented(limit: int) -> np.ndarray:
    base_limit = math.isqrt(limit)
    base_mask = _odd_sieve_direct(base_limit)
    base_odd_primes = (2 * np.flatnonzero(base_mask) + 1).tolist()
    size = (limit + 1) // 2
    mask = np.ones(size, dtype=bool)
    mask[0] = False
    lo = 0
    while lo < size:
        hi = min(lo + _SEGMENT_ODDS, size)
        n_lo = 2 * lo + 1
        seg = mask[lo:hi]
        for p in base_odd_primes:
            start = max(p * p, ((n_lo + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            idx = (start // 2) - lo
            if idx < hi - lo:
                seg[idx::p] = False
        lo = hi
    return mask


class PrimeTable:
    """Exact primality over [2, limit] with cached ascending enumeration."""

    __slots__ = ("limit", "_odd_mask", "_primes")

    def __init__(self, limit: int, *, limit_cap: int = DEFAULT_LIMIT_CAP):
        if limit < 2:
            raise DomainError(f"prime table limit must be >= 2, got {limit}")
        if limit > limit_cap:
            raise CapacityError(
                f"prime table limit {limit} exceeds cap {limit_cap}", limit=limit
            )
        self.limit = int(limit)
        if self.limit <= _DIRECT_LIMIT:
            self._odd_mask = _odd_sieve_direct(self.limit)
        else:
            self._odd_mask = _odd_sieve_segmented(self.limit)
        self._primes = None

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise CapacityError(f"{n} exceeds table limit {self.limit}", limit=self.limit)
        if n < 2:
            return False
        if n == 2:
            return True
        if n % 2 == 0:
            return False
        return bool(self._odd_mask[n // 2])

    @property
    def primes(self) -> np.ndarray:
        """All primes <= limit, ascending (int64, cached)."""
        if self._primes is None:
            odd = 2 * np.flatnonzero(self._odd_mask).astype(np.int64) + 1
            self._primes = np.concatenate(([np.int64(2)], odd))
        return self._primes

    def primes_between(self, lo: float, hi: float) -> np.ndarray:
        """Primes p with lo < p <= hi, ascending."""
        if hi > self.limit:
            raise CapacityError(
                f"range end {hi} exceeds table limit {self.limit}", limit=self.limit
            )
        ps = self.primes
        i = np.searchsorted(ps, lo, side="right")
        j = np.searchsorted(ps, hi, side="right")
        return ps[i:j]

    def count(self) -> int:
        return int(self.primes.size)

    def __repr__(self):
        return f"PrimeTable(limit={self.limit})"


def build_prime_table(limit: int, *, limit_cap: int = DEFAULT_LIMIT_CAP) -> PrimeTable:
    return PrimeTable(limit, limit_cap=limit_cap)


# --------------------------------------------------------------------------
# selectors


class Selector:
    """Immutable predicate over primes, vectorised via ``mask``."""

    def mask(self, primes: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def contains(self, p: int) -> bool:
        return bool(self.mask(np.asarray([p], dtype=np.int64))[0])

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class AllPrimes(Selector):
    def mask(self, primes):
        return np.ones(primes.shape, dtype=bool)

    def contains(self, p):
        return True

    def describe(self):
        return "all"


@dataclass(frozen=True)
class Interval(Selector):
    """Primes p with lo < p <= hi."""

    lo: float
    hi: float

    def mask(self, primes):
        return (primes > self.lo) & (primes <= self.hi)

    def contains(self, p):
        return self.lo < p <= self.hi

    def describe(self):
        return f"interval:{self.lo:g},{self.hi:g}"


@dataclass(frozen=True)
class ResidueClass(Selector):
    """Primes p with p = a (mod m)."""

    a: int
    m: int

    def __post_init__(self):
        if self.m < 1 or not (0 <= self.a < self.m):
            raise DomainError(f"bad residue class {self.a} mod {self.m}")

    def mask(self, primes):
        return primes % self.m == self.a

    def contains(self, p):
        return p % self.m == self.a

    def describe(self):
        return f"ap:{self.a},{self.m}"


@dataclass(frozen=True)
class Excluding(Selector):
    """All primes except a finite set."""

    excluded: frozenset

    def mask(self, primes):
        if not self.excluded:
            return np.ones(primes.shape, dtype=bool)
        banned = np.fromiter(self.excluded, dtype=np.int64, count=len(self.excluded))
        return ~np.isin(primes, banned)

    def contains(self, p):
        return p not in self.excluded

    def describe(self):
        return "not:" + ",".join(str(v) for v in sorted(self.excluded))


@dataclass(frozen=True)
class MinValue(Selector):
    """Primes p >= threshold."""

    threshold: float

    def mask(self, primes):
        return primes >= self.threshold

    def contains(self, p):
        return p >= self.threshold

    def describe(self):
        return f"min:{self.threshold:g}"


@dataclass(frozen=True)
class And(Selector):
    parts: tuple

    def mask(self, primes):
        out = np.ones(primes.shape, dtype=bool)
        for part in self.parts:
            out &= part.mask(primes)
        return out

    def contains(self, p):
        return all(part.contains(p) for part in self.parts)

    def describe(self):
        return "and(" + ";".join(part.describe() for part in self.parts) + ")"


ALL = AllPrimes()


@dataclass(frozen=True, eq=False)
class PrimeSubset:
    """A prime table restricted by a selector (the sieving sets P0, P0*, T)."""

    base: PrimeTable
    selector: Selector = ALL

    def primes_in(self, lo: float, hi: float) -> np.ndarray:
        arr = self.base.primes_between(lo, hi)
        if isinstance(self.selector, AllPrimes):
            return arr
        return arr[self.selector.mask(arr)]

    def primes(self) -> np.ndarray:
        return self.primes_in(0, self.base.limit)

    def contains(self, p: int) -> bool:
        return self.base.is_prime(p) and self.selector.contains(p)

    def restricted(self, selector: Selector) -> "PrimeSubset":
        return PrimeSubset(self.base, And((self.selector, selector)))

    def with_min(self, threshold: float) -> "PrimeSubset":
        """The subset intersected with [threshold, infinity)."""
        return self.restricted(MinValue(threshold))

    def restrict_interval(self, lo: float, hi: float) -> "PrimeSubset":
        return self.restricted(Interval(lo, hi))

    def is_empty(self) -> bool:
        return self.primes().size == 0

    def describe(self) -> str:
        return self.selector.describe()


def all_primes(table: PrimeTable) -> PrimeSubset:
    return PrimeSubset(table, ALL)


# --------------------------------------------------------------------------
# partial sums


@dataclass(frozen=True)
class PrimeSums:
    """theta = sum log p, mertens_log = sum log p / p, mertens_recip = sum 1/p."""

    theta: float
    mertens_log: float
    mertens_recip: float

    def __add__(self, other: "PrimeSums") -> "PrimeSums":
        return PrimeSums(
            self.theta + other.theta,
            self.mertens_log + other.mertens_log,
            self.mertens_recip + other.mertens_recip,
        )


def subset_sums(ps: PrimeSubset, lo: float, hi: float) -> PrimeSums:
    """Partial sums over primes p in ps with lo < p <= hi.

    Accumulated in ascending order in double precision; the rounding error is
    far below the 1e-9 relative budget at table scales.
    """
    if lo < 0 or lo >= hi:
        raise DomainError(f"need 0 <= lo < hi, got lo={lo}, hi={hi}")
    theta = 0.0
    mlog = 0.0
    mrec = 0.0
    for p in ps.primes_in(lo, hi).tolist():
        lp = math.log(p)
        theta += lp
        mlog += lp / p
        mrec += 1.0 / p
    return PrimeSums(theta, mlog, mrec)


def density_ratio_c(
    ps: PrimeSubset, x: int, *, window_floor_exponent: float = 0.1
) -> float:
    """Minimum over dyadic windows (y/2, y] of theta_ps(window)/theta_all(window).

    Windows run y = sqrt(x), sqrt(x)/2, ... while y >= x^window_floor_exponent.
    The returned value is a mesh infimum: the windows actually consumed
    downstream are exactly these.  Windows containing no primes at all carry
    no information and are skipped.
    """
    if x < 100:
        raise DomainError(f"need x >= 100, got {x}")
    if math.isqrt(x) > ps.base.limit:
        raise CapacityError(
            f"table limit {ps.base.limit} does not cover sqrt({x})",
            limit=ps.base.limit,
        )
    everything = all_primes(ps.base)
    floor = x**window_floor_exponent
    y = math.sqrt(x)
    ratios = []
    while y >= floor:
        theta_all = subset_sums(everything, y / 2, y).theta
        if theta_all > 0:
            theta_sub = subset_sums(ps, y / 2, y).theta
            ratios.append(theta_sub / theta_all)
        y /= 2
    if not ratios:
        raise DegenerateInputError("no dyadic window contains a prime")
    if max(ratios) == 0.0:
        raise DegenerateInputError("subset contributes no prime to any window")
    return min(ratios)


# --------------------------------------------------------------------------
# divisibility scanning (exact, factorisation-based)

_SPF_CAP = 5 * 10**7
_spf_cache: dict = {"limit": -1, "table": None}


def smallest_prime_factor_table(limit: int) -> np.ndarray:
    """spf[n] = smallest prime factor of n (spf[1] = 1), for 0 <= n <= limit.

    The most recent table is cached and reused for any smaller limit.
    """
    if limit > _SPF_CAP:
        raise CapacityError(f"spf table limit {limit} exceeds cap {_SPF_CAP}")
    if _spf_cache["limit"] >= limit:
        return _spf_cache["table"]
    spf = np.zeros(limit + 1, dtype=np.int64)
    spf[1:2] = 1
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            seg = spf[p * p :: p]
            seg[seg == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    if limit >= 0:
        spf[0] = 0
    _spf_cache["limit"] = limit
    _spf_cache["table"] = spf
    return spf


def divisibility_hits(
    values: Sequence[int] | np.ndarray, ps: PrimeSubset, *, max_pairs: int = 20
) -> list[tuple[int, int]]:
    """Up to max_pairs (value, prime) pairs where a prime of ps divides a value."""
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
    if arr.size == 0:
        return []
    top = int(arr.max())
    hits: list[tuple[int, int]] = []
    if top <= _SPF_CAP:
        spf = smallest_prime_factor_table(top)
        for v in arr.tolist():
            n = v
            while n > 1:
                p = int(spf[n])
                if ps.contains(p):
                    hits.append((v, p))
                    break
                while n % p == 0:
                    n //= p
            if len(hits) >= max_pairs:
                return hits
        return hits
    for p in ps.primes_in(1, min(top, ps.base.limit)).tolist():
        divisible = arr[arr % p == 0]
        for v in divisible.tolist():
            hits.append((int(v), p))
            if len(hits) >= max_pairs:
                return hits
    return hits

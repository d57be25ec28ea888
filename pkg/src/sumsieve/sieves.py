"""Sieve bound evaluators: the larger sieve, the large sieve, the Selberg
upper bound with explicit remainder, the inverse-sieve lower bound, and the
proposition-level bound machines built from them.

Every evaluator returns a ``SieveBoundReport`` carrying the bound, the
denominator, the exact sifted count for comparison, and a per-hypothesis
record.  The hypothesis checks are the numerically verifiable conditions
under which each bound is a theorem; with the strict constants they are
implied by the stated thresholds, with scaled constants they are checked
directly.  A bound should only be asserted against the sifted count when
``hypotheses_ok`` holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError
from .primes import PrimeSubset, all_primes, divisibility_hits, subset_sums
from .profiles import STRICT, ConstantsProfile
from .sumset import IntegerSet

# Product over primes of (1 - t_p) stays >= 1/2 whenever each t_p <= 1/4 and
# the deficit sum below stays under this threshold (1 - t >= exp(-2t) there).
_DEFICIT_BUDGET = math.log(2.0) / 4.0

_residue_mask_cache: dict = {}


def reduced_residues_mask(d: int) -> np.ndarray:
    """Boolean mask over [0, d) marking residues coprime to d (cached)."""
    mask = _residue_mask_cache.get(d)
    if mask is None:
        mask = np.gcd(np.arange(d, dtype=np.int64), d) == 1
        if len(_residue_mask_cache) > 4096:
            _residue_mask_cache.clear()
        _residue_mask_cache[d] = mask
    return mask


@dataclass(frozen=True)
class OccupancyProfile:
    """Map p -> number of residue classes mod p met (or avoided) by a set."""

    entries: dict
    variant: str = "all"  # or "nonzero"

    def get(self, p: int, default: float = 0.0) -> float:
        return self.entries.get(p, default)

    def primes(self) -> list[int]:
        return sorted(self.entries)


@dataclass(frozen=True)
class ShiftSet:
    """Distinct non-negative shift values a_1 < ... < a_k."""

    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) < 1:
            raise DomainError("need at least one shift")
        if list(self.values) != sorted(set(self.values)):
            raise DomainError("shifts must be distinct and increasing")
        if self.values[0] < 0:
            raise DomainError("shifts must be non-negative")

    @classmethod
    def coerce(cls, values) -> "ShiftSet":
        if isinstance(values, ShiftSet):
            return values
        return cls(tuple(sorted(set(int(v) for v in values))))

    @property
    def k(self) -> int:
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)


@dataclass
class SieveBoundReport:
    bound: float
    denominator_L: float
    params: dict
    valid: bool
    reason: str = ""
    main_term: Optional[float] = None
    remainder: Optional[float] = None
    sifted_count: Optional[int] = None
    hypotheses: dict = field(default_factory=dict)
    branch: Optional[str] = None
    profile: Optional[str] = None

    @property
    def hypotheses_ok(self) -> bool:
        return all(self.hypotheses.values())

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "denominator_L": self.denominator_L,
            "params": self.params,
            "valid": self.valid,
            "reason": self.reason,
            "main_term": self.main_term,
            "remainder": self.remainder,
            "sifted_count": self.sifted_count,
            "hypotheses": dict(self.hypotheses),
            "hypotheses_ok": self.hypotheses_ok,
            "branch": self.branch,
            "profile": self.profile,
        }


def occupancy(a, ps: PrimeSubset, variant: str = "all") -> OccupancyProfile:
    """Exact residue-class occupancy of a set at every prime of ps."""
    if variant not in ("all", "nonzero"):
        raise DomainError(f"unknown variant {variant!r}")
    a = IntegerSet.coerce(a)
    if len(a) == 0:
        raise DomainError("occupancy of an empty set")
    arr = a.array()
    entries = {}
    for p in ps.primes().tolist():
        residues = np.unique(arr % p)
        count = int(residues.size)
        if variant == "nonzero" and residues.size and residues[0] == 0:
            count -= 1
        entries[p] = count
    return OccupancyProfile(entries, variant)


def sift_count(s, shifts, ps: PrimeSubset) -> int:
    """#{s in S : s != a_i mod p for every shift a_i and prime p in ps}."""
    s = IntegerSet.coerce(s)
    shifts = ShiftSet.coerce(shifts)
    arr = s.array()
    if arr.size == 0:
        return 0
    keep = np.ones(arr.shape, dtype=bool)
    shift_arr = shifts.array()
    top = int(max(arr.max(), shift_arr.max()))
    for p in ps.primes_in(0, min(top, ps.base.limit)).tolist():
        forbidden = np.unique(shift_arr % p)
        res = arr % p
        if forbidden.size <= 8:
            hit = res == forbidden[0]
            for f in forbidden[1:]:
                hit |= res == f
            keep &= ~hit
        else:
            keep &= ~np.isin(res, forbidden)
        if not keep.any():
            return 0
    # for p beyond every element and shift, congruence mod p means equality
    if ps.base.limit > top and ps.primes_in(top, ps.base.limit).size > 0:
        keep &= ~np.isin(arr, shift_arr)
    return int(keep.sum())


# --------------------------------------------------------------------------
# the three sieve lemmas


def larger_sieve_bound(
    profile: OccupancyProfile, ps: PrimeSubset, n_limit: int
) -> SieveBoundReport:
    """Gallagher larger-sieve upper bound for a set in [1, N].

    bound = (sum log p - log N) / (sum log p / nu(p) - log N), valid while
    the denominator is positive.  nu(p) = 0 for some p means the set is
    empty mod p; reported as invalid with bound 0 rather than raised.
    """
    plist = ps.primes().tolist()
    params = {"N": n_limit, "ps": ps.describe(), "primes": len(plist)}
    log_n = math.log(n_limit)
    num = -log_n
    den = -log_n
    for p in plist:
        if p not in profile.entries:
            raise DomainError(f"occupancy profile missing prime {p}")
        nu = profile.get(p)
        if nu <= 0:
            return SieveBoundReport(
                0.0, 0.0, params, False, f"occupancy 0 at p={p}: sifted set empty"
            )
        lp = math.log(p)
        num += lp
        den += lp / nu
    if den <= 0:
        return SieveBoundReport(
            math.inf, den, params, False, "denominator not positive"
        )
    return SieveBoundReport(num / den, den, params, True)


def _squarefree_weight_sum(support: Sequence[int], weight, bound: float) -> float:
    """sum over squarefree q <= bound supported on `support` of prod weight(p).

    Includes the empty product q = 1 (term 1).
    """
    total = 0.0

    def rec(i: int, q: int, term: float):
        nonlocal total
        total += term
        for j in range(i, len(support)):
            p = support[j]
            if q * p > bound:
                break
            w = weight(p)
            if w != 0.0:
                rec(j + 1, q * p, term * w)

    rec(0, 1, 1.0)
    return total


def large_sieve_bound(profile: OccupancyProfile, x: int, q_limit: int) -> SieveBoundReport:
    """Montgomery large-sieve upper bound (x + Q^2) / L.

    omega(p) is the number of residue classes avoided; primes absent from the
    profile contribute omega = 0.  The q = 1 term makes L >= 1, so the report
    is always valid.
    """
    support = []
    for p in profile.primes():
        w = profile.get(p)
        if w < 0 or w >= p:
            raise DomainError(f"need 0 <= omega(p) <= p-1 at p={p}, got {w}")
        if w > 0 and p <= q_limit:
            support.append(p)
    L = _squarefree_weight_sum(support, lambda p: profile.get(p) / (p - profile.get(p)), q_limit)
    bound = (x + q_limit**2) / L
    params = {"x": x, "Q": q_limit, "support": len(support)}
    return SieveBoundReport(bound, L, params, True)


def selberg_bound(
    c_set, ps: PrimeSubset, shifts, omega: OccupancyProfile, q_limit: int
) -> SieveBoundReport:
    """Selberg upper bound: main term #C/L plus the exact remainder sum.

    The remainder runs over squarefree d <= Q^2 supported on ps, weighting
    tau3(d) against the exact divisibility discrepancy
    |#{c : d | prod(c - r_i)} - #C prod omega(p)/p|.  Divisibility is tested
    per prime via residue membership (d squarefree with known factors).
    Sound for any 0 <= omega(p) < p, so the report is always valid.
    """
    c_set = IntegerSet.coerce(c_set)
    shifts = ShiftSet.coerce(shifts)
    if len(c_set) == 0:
        raise DomainError("C must be non-empty")
    plist = ps.primes().tolist()
    for p in plist:
        w = omega.get(p)
        if w < 0 or w >= p:
            raise DomainError(f"need 0 <= omega(p) < p at p={p}, got {w}")
    c_arr = c_set.array()
    shift_arr = shifts.array()
    size_c = len(c_set)

    L = _squarefree_weight_sum(
        [p for p in plist if omega.get(p) > 0],
        lambda p: omega.get(p) / (p - omega.get(p)),
        q_limit,
    )
    main = size_c / L

    hit_masks = {}
    for p in plist:
        occupied = np.unique(shift_arr % p)
        hit_masks[p] = np.isin(c_arr % p, occupied)

    remainder = 0.0
    d_bound = q_limit**2

    def rec(i: int, d: int, mask, density: float, r: int):
        nonlocal remainder
        if d > 1:
            count = int(mask.sum())
            remainder += (3**r) * abs(count - size_c * density)
        for j in range(i, len(plist)):
            p = plist[j]
            if d * p > d_bound:
                break
            new_mask = hit_masks[p] if mask is None else (mask & hit_masks[p])
            rec(j + 1, d * p, new_mask, density * omega.get(p) / p, r + 1)

    rec(0, 1, None, 1.0, 0)

    sifted = sift_count(c_set, shifts, ps)
    params = {
        "Q": q_limit,
        "ps": ps.describe(),
        "k": shifts.k,
        "set_size": size_c,
        "primes": len(plist),
    }
    return SieveBoundReport(
        main + remainder,
        L,
        params,
        True,
        main_term=main,
        remainder=remainder,
        sifted_count=sifted,
    )


# --------------------------------------------------------------------------
# inverse sieve


@dataclass(frozen=True)
class InverseSieveReport:
    lower: float
    strengthened: bool
    lhs: float
    recip_sum: float
    theta_sum: float
    base_lower: float
    window: tuple[float, float]
    k: int


def inverse_sieve_lower_bound(
    a, ps: PrimeSubset, y: float, x: int, *, window_coefficient: float = 8.0
) -> InverseSieveReport:
    """Lower bound for sum of nu_A(p)/p over the window (y/2, y].

    base lower = k * sum 1/p - (k^2 - k) log x / ((y/2) log(y/2)); when the
    window's theta sum reaches window_coefficient * k * log x the bound is
    replaced by the strengthened (k/2) * sum 1/p.  The exact left-hand side
    is returned for verification.
    """
    a = IntegerSet.coerce(a)
    k = len(a)
    if k < 2:
        raise DomainError(f"need #A >= 2, got {k}")
    if y < 10:
        raise DomainError(f"need y >= 10, got {y}")
    if a.max > x or a.min < 1:
        raise DomainError("A must lie in [1, x]")
    sums = subset_sums(ps, y / 2, y)
    window_primes = ps.primes_in(y / 2, y)
    arr = a.array()
    lhs = 0.0
    for p in window_primes.tolist():
        lhs += np.unique(arr % p).size / p
    log_x = math.log(x)
    base_lower = k * sums.mertens_recip - (k * k - k) * log_x / ((y / 2) * math.log(y / 2))
    strengthened = sums.theta >= window_coefficient * k * log_x
    lower = (k / 2.0) * sums.mertens_recip if strengthened else base_lower
    return InverseSieveReport(
        lower, strengthened, lhs, sums.mertens_recip, sums.theta, base_lower, (y / 2, y), k
    )


# --------------------------------------------------------------------------
# proposition-level machines


def _occupancy_deficit(shift_arr: np.ndarray, plist: list[int], k_target) -> float:
    """sum over p of (g(p) - nu(p))/p where nu is the occupancy used and
    g(p) the completely multiplicative comparison value at p."""
    total = 0.0
    for p in plist:
        g, nu = k_target(shift_arr, p)
        total += (g - nu) / p
    return total


def prop_smallkscs_bound(s, shifts, ctx) -> SieveBoundReport:
    """Small-k bound driven by the sieve-controls-size denominator.

    bound = 4x / ((k/2) * sum over 1 < q <= sqrt(x), q squarefree and
    P0*-supported, of prod 2/p).  Hypotheses verified: every P0* prime up to
    sqrt(x) is at least 4k, and the occupancy deficit sum stays under the
    exp(-1/2) budget; both hold automatically under the strict constants.
    """
    s = IntegerSet.coerce(s)
    shifts = ShiftSet.coerce(shifts)
    k = shifts.k
    if not (2 <= k <= ctx.K):
        raise DomainError(f"need 2 <= k <= K = {ctx.K:.6g}, got k = {k}")
    if shifts.values[-1] > ctx.x:
        raise DomainError(f"shifts must lie in [0, x = {ctx.x}]")
    star = ctx.ps_star
    x = ctx.x
    root = math.isqrt(x)
    params = {
        "x": x,
        "k": k,
        "K": ctx.K,
        "ps_star": star.describe(),
        "set_size": len(s),
    }
    small = star.primes_in(1, root)
    denom_sum = _squarefree_weight_sum(small.tolist(), lambda p: 2.0 / p, root) - 1.0
    sifted = sift_count(s, shifts, star)
    if small.size == 0 or denom_sum <= 0:
        return SieveBoundReport(
            math.inf,
            0.0,
            params,
            False,
            "P0* has no prime up to sqrt(x); denominator sum vanishes",
            sifted_count=sifted,
            profile=ctx.profile.name,
        )
    denominator = (k / 2.0) * denom_sum
    bound = 4.0 * x / denominator

    shift_arr = shifts.array()
    deficit = 0.0
    for p in small.tolist():
        nu = np.unique(shift_arr % p).size
        deficit += (k - nu) / p
    hyps = {
        "star_primes_at_least_4k": bool(small.size == 0 or int(small[0]) >= 4 * k),
        "occupancy_deficit_within_budget": deficit <= _DEFICIT_BUDGET,
    }
    return SieveBoundReport(
        bound,
        denominator,
        params,
        True,
        sifted_count=sifted,
        hypotheses=hyps,
        profile=ctx.profile.name,
    )


def prop_smallkbv_bound(s, shifts, ctx, q_limit: int) -> SieveBoundReport:
    """Small-k bound driven by progression discrepancies inside S.

    bound = 2#S / ((k-1) * sum over 1 < q <= Q of mu^2/q, P0*-supported)
          + sum over squarefree d <= Q^2, P0*-supported, of
            tau3(d)^(1 + log k / log 3) * max over (a,d)=1 of
            |#{s in S : s = a mod d} - #S/phi(d)|.
    Requires that no element of S is divisible by a P0* prime.
    """
    s = IntegerSet.coerce(s)
    shifts = ShiftSet.coerce(shifts)
    k = shifts.k
    if not (2 <= k <= ctx.K):
        raise DomainError(f"need 2 <= k <= K = {ctx.K:.6g}, got k = {k}")
    if shifts.values[-1] > ctx.x:
        raise DomainError(f"shifts must lie in [0, x = {ctx.x}]")
    star = ctx.ps_star
    hits = divisibility_hits(s.elements, star)
    if hits:
        raise DomainError(
            f"S contains elements divisible by P0* primes, e.g. {hits[:3]}"
        )
    size_s = len(s)
    params = {
        "x": ctx.x,
        "Q": q_limit,
        "k": k,
        "K": ctx.K,
        "ps_star": star.describe(),
        "set_size": size_s,
    }
    sifted = sift_count(s, shifts, star)
    q_primes = star.primes_in(1, q_limit).tolist()
    main_den = _squarefree_weight_sum(q_primes, lambda p: 1.0 / p, q_limit) - 1.0
    if not q_primes or main_den <= 0:
        return SieveBoundReport(
            math.inf,
            0.0,
            params,
            False,
            "P0* has no prime up to Q; main denominator vanishes",
            sifted_count=sifted,
            profile=ctx.profile.name,
        )
    main = 2.0 * size_s / ((k - 1) * main_den)

    d_bound = q_limit**2
    d_primes = star.primes_in(1, d_bound).tolist()
    s_arr = s.array()
    disc = 0.0

    def rec(i: int, d: int, r: int):
        nonlocal disc
        if d > 1:
            counts = np.bincount(s_arr % d, minlength=d)
            reduced = reduced_residues_mask(d)
            phi = int(reduced.sum())
            dev = float(np.abs(counts[reduced] - size_s / phi).max())
            disc += (3.0 * k) ** r * dev  # tau3(d)^(1+log k/log 3) for squarefree d
        for j in range(i, len(d_primes)):
            p = d_primes[j]
            if d * p > d_bound:
                break
            rec(j + 1, d * p, r + 1)

    rec(0, 1, 0)
    bound = main + disc

    shift_arr = shifts.array()
    deficit = 0.0
    for p in q_primes:
        residues = np.unique(shift_arr % p)
        nu = int(residues.size)
        g = k
        if residues[0] == 0:
            nu -= 1
            g = k - 1
        deficit += (g - nu) / p
    hyps = {
        "star_primes_at_least_4k": bool(not d_primes or d_primes[0] >= 4 * k),
        "occupancy_deficit_within_budget": deficit <= _DEFICIT_BUDGET,
    }
    return SieveBoundReport(
        bound,
        (k - 1) * main_den,
        params,
        True,
        main_term=main,
        remainder=disc,
        sifted_count=sifted,
        hypotheses=hyps,
        profile=ctx.profile.name,
    )


def middlek_bound(
    s,
    shifts,
    ps: PrimeSubset,
    x: int,
    y1: float,
    y2: float,
    *,
    profile: ConstantsProfile = STRICT,
) -> SieveBoundReport:
    """Two-window bound 128 x log y1 log y2 / k^2 times the window theta
    ratios, with an automatic reduction of k when the window sums only
    support a smaller shift count.

    The full-k branch applies when both window theta sums over ps reach
    w * k * log x (w from the profile); otherwise k is reduced to
    k0 = min(k, floor(theta_i / (w log x))) and the bound carries
    M = max(1/k^2, 4 (w log x)^2 / theta_i^2) in place of 1/k0^2.
    """
    s = IntegerSet.coerce(s)
    shifts = ShiftSet.coerce(shifts)
    k = shifts.k
    if not (y1 < y2 / 2 < y2 < math.sqrt(x) / y1):
        raise DomainError(
            f"window ordering violated: need y1 < y2/2 < y2 < sqrt(x)/y1, "
            f"got y1={y1}, y2={y2}, sqrt(x)/y1={math.sqrt(x) / y1:.6g}"
        )
    if shifts.values[-1] > x:
        raise DomainError(f"shifts must lie in [0, x = {x}]")
    log_x = math.log(x)
    w_coeff = profile.window_coefficient
    everything = all_primes(ps.base)
    windows = []
    for y in (y1, y2):
        sub = subset_sums(ps, y / 2, y)
        full = subset_sums(everything, y / 2, y)
        windows.append((y, sub, full))
    params = {
        "x": x,
        "k": k,
        "y1": y1,
        "y2": y2,
        "ps": ps.describe(),
        "theta_ps": [w[1].theta for w in windows],
        "theta_all": [w[2].theta for w in windows],
    }
    sifted = sift_count(s, shifts, ps)
    if any(w[1].theta <= 0 for w in windows):
        return SieveBoundReport(
            math.inf,
            0.0,
            params,
            False,
            "a window contains no subset prime",
            sifted_count=sifted,
            profile=profile.name,
        )

    threshold = w_coeff * k * log_x
    if all(w[1].theta >= threshold for w in windows):
        branch = "full-k"
        k_eff = k
        m_factor = 1.0 / (k * k)
    else:
        branch = "reduced-k"
        k_eff = min(
            k, *(int(w[1].theta // (w_coeff * log_x)) for w in windows)
        )
        if k_eff < 1:
            return SieveBoundReport(
                math.inf,
                0.0,
                params,
                False,
                "window theta sums below the single-shift threshold",
                sifted_count=sifted,
                branch=branch,
                profile=profile.name,
            )
        m_factor = max(
            1.0 / (k * k),
            *(4.0 * (w_coeff * log_x) ** 2 / (w[1].theta ** 2) for w in windows),
        )
    ratio = 1.0
    for _, sub, full in windows:
        ratio *= full.theta / sub.theta
    bound = 128.0 * x * m_factor * math.log(y1) * math.log(y2) * ratio

    hyps = {"windows_at_least_10": y1 >= 10 and y2 >= 10}
    for idx, (y, sub, full) in enumerate(windows, start=1):
        err = (k_eff * k_eff - k_eff) * log_x / ((y / 2) * math.log(y / 2))
        hyps[f"window{idx}_error_term_dominated"] = err <= 0.5 * k_eff * sub.mertens_recip
        hyps[f"window{idx}_mertens_at_least_half"] = full.mertens_log >= 0.5
    return SieveBoundReport(
        bound,
        m_factor,
        params,
        True,
        sifted_count=sifted,
        hypotheses=hyps,
        branch=branch,
        profile=profile.name,
    )

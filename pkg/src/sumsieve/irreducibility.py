"""Hypothesis evaluation for the general additive-irreducibility machinery,
plus the half-occupancy diagnostics used in the primes analysis.

``build_context`` assembles the tuple (x, c, sigma, sigma0, K, P0, P0*) for a
concrete instance and verifies that no target-set element is divisible by a
sieving prime.  The two alternative conditions (sieve-controls-size and the
progression-discrepancy condition) are then evaluated exactly.  With strict
constants, K is typically so large that P0* is empty at desk scale; that is
reported honestly, never papered over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .arith import MultiplicativeSpec, restricted_multiplicative_sum
from .errors import DegenerateInputError, DivisibilityError, DomainError
from .primes import PrimeSubset, PrimeTable, density_ratio_c, divisibility_hits
from .profiles import STRICT, ConstantsProfile
from .sieves import OccupancyProfile, _squarefree_weight_sum, reduced_residues_mask
from .sumset import IntegerSet


@dataclass
class GenThmContext:
    x: int
    ps: PrimeSubset
    c: float
    sigma: float
    sigma0: float
    K: float
    ps_star: PrimeSubset
    profile: ConstantsProfile
    hypothesis_failures: list = field(default_factory=list)
    s_size: int = 0
    s0_size: int = 0
    c_measured: Optional[float] = None

    @property
    def hypotheses_met(self) -> bool:
        return not self.hypothesis_failures

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "c": self.c,
            "c_measured": self.c_measured,
            "sigma": self.sigma,
            "sigma0": self.sigma0,
            "K": self.K,
            "ps": self.ps.describe(),
            "ps_star": self.ps_star.describe(),
            "ps_star_empty": self.ps_star.is_empty(),
            "profile": self.profile.describe(),
            "hypothesis_failures": list(self.hypothesis_failures),
            "s_size": self.s_size,
            "s0_size": self.s0_size,
        }


def build_context(
    s,
    s0,
    ps: PrimeSubset,
    x: int,
    profile: ConstantsProfile = STRICT,
) -> GenThmContext:
    """Assemble the evaluation context for a concrete (S, S0, P0, x) instance.

    Verifies s0 subset of s subset of [1, x] and that no element of s is
    divisible by a prime of ps (raising with witnesses otherwise).  A density
    ratio c at or below the window floor is recorded as a hypothesis failure
    in the context, not raised.
    """
    s = IntegerSet.coerce(s)
    s0 = IntegerSet.coerce(s0)
    if len(s) == 0 or len(s0) == 0:
        raise DomainError("S and S0 must be non-empty")
    if not s0.issubset(s):
        raise DomainError("S0 must be a subset of S")
    if s.min < 1 or s.max > x:
        raise DomainError(f"S must lie in [1, {x}]")
    hits = divisibility_hits(s.elements, ps)
    if hits:
        raise DivisibilityError(hits)

    failures = []
    try:
        measured = density_ratio_c(
            ps, x, window_floor_exponent=profile.c_floor_exponent
        )
    except DegenerateInputError:
        if profile.c_override is None:
            raise
        measured = 0.0
    if profile.c_override is not None:
        # asserted rather than measured; the measured value rides along in
        # the context so the assertion is never silent
        c = profile.c_override
        if measured <= 0:
            failures.append(
                f"density ratio asserted as c = {c:g} but measured 0 on the mesh"
            )
    else:
        c = measured
        if c <= x ** (-profile.c_floor_exponent):
            failures.append(
                f"density ratio c = {c:.6g} at or below the window floor "
                f"x^(-{profile.c_floor_exponent:g})"
            )
    sigma = len(s) / x
    sigma0 = len(s0) / len(s)
    if c > 0:
        big_k = profile.k_coefficient * math.log(x) ** 2 / (sigma0 * sigma * c * c)
    else:
        big_k = math.inf
        failures.append("c = 0: K is unbounded and P0* is empty")
    star = ps.with_min(big_k**profile.star_exponent if math.isfinite(big_k) else math.inf)
    return GenThmContext(
        x=x,
        ps=ps,
        c=c,
        sigma=sigma,
        sigma0=sigma0,
        K=big_k,
        ps_star=star,
        profile=profile,
        hypothesis_failures=failures,
        s_size=len(s),
        s0_size=len(s0),
        c_measured=measured,
    )


@dataclass(frozen=True)
class ConditionResult:
    name: str
    holds: bool
    values: dict

    def to_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, **self.values}


def check_scs_condition(ctx: GenThmContext) -> ConditionResult:
    """Sieve-controls-size: sum over 1 < q <= sqrt(x), q squarefree and
    P0*-supported, of prod 2/p, against the threshold coeff/(sigma0 sigma)."""
    root = math.isqrt(ctx.x)
    spec = MultiplicativeSpec({int(p): 2.0 for p in ctx.ps_star.primes_in(1, root)})
    total = restricted_multiplicative_sum(spec, ctx.ps_star, root, mode="squarefree") - 1.0
    threshold = ctx.profile.condition_coefficient / (ctx.sigma0 * ctx.sigma)
    return ConditionResult(
        "sieve_controls_size",
        total >= threshold,
        {
            "sum_value": total,
            "threshold": threshold,
            "star_empty": ctx.ps_star.is_empty(),
            "profile": ctx.profile.name,
        },
    )


def check_bv_condition(ctx: GenThmContext, s, q_limit: int) -> ConditionResult:
    """Progression-discrepancy condition at modulus cutoff Q:

    main: sum over 1 < q <= Q, P0*-supported squarefree, of mu^2/q, against
    coeff * sigma0^(-1); discrepancy: sum over squarefree d <= Q^2 of
    tau3(d)^(1 + log K / log 3) * max over (a,d)=1 of
    |#{s in S : s = a mod d} - #S/phi(d)|, against #S sigma0 / (2K).
    """
    s = IntegerSet.coerce(s)
    if q_limit < 1:
        raise DomainError(f"need Q >= 1, got {q_limit}")
    size_s = len(s)
    star = ctx.ps_star
    q_primes = star.primes_in(1, q_limit).tolist()
    main_sum = _squarefree_weight_sum(q_primes, lambda p: 1.0 / p, q_limit) - 1.0
    main_threshold = ctx.profile.condition_coefficient / ctx.sigma0

    d_bound = q_limit**2
    d_primes = star.primes_in(1, min(d_bound, star.base.limit)).tolist()
    s_arr = s.array()
    disc_sum = 0.0
    if d_primes and math.isfinite(ctx.K):
        weight_base = 3.0 ** (1.0 + math.log(ctx.K) / math.log(3.0))

        def rec(i: int, d: int, r: int):
            nonlocal disc_sum
            if d > 1:
                counts = np.bincount(s_arr % d, minlength=d)
                coprime = reduced_residues_mask(d)
                phi = int(coprime.sum())
                dev = float(np.abs(counts[coprime] - size_s / phi).max())
                disc_sum += weight_base**r * dev
            for j in range(i, len(d_primes)):
                p = d_primes[j]
                if d * p > d_bound:
                    break
                rec(j + 1, d * p, r + 1)

        rec(0, 1, 0)
    disc_threshold = (
        size_s * ctx.sigma0 / (2.0 * ctx.K) if math.isfinite(ctx.K) else 0.0
    )
    main_ok = main_sum >= main_threshold
    disc_ok = disc_sum <= disc_threshold
    return ConditionResult(
        "bombieri_vinogradov",
        main_ok and disc_ok,
        {
            "main_sum": main_sum,
            "main_threshold": main_threshold,
            "main_holds": main_ok,
            "disc_sum": disc_sum,
            "disc_threshold": disc_threshold,
            "disc_holds": disc_ok,
            "Q": q_limit,
            "star_empty": star.is_empty(),
            "profile": ctx.profile.name,
        },
    )


@dataclass(frozen=True)
class ConclusionBounds:
    upper_B: float
    lower_A: float
    note: str

    def to_dict(self) -> dict:
        return {"upper_B": self.upper_B, "lower_A": self.lower_A, "note": self.note}


def conclusion_bounds(ctx: GenThmContext) -> ConclusionBounds:
    """Shape values sqrt(x) log^4 x / c^4 and sqrt(x) sigma0 sigma c^4 / log^4 x.

    The implied constants are unspecified upstream; both values are emitted
    with constant 1 and flagged as shapes, not certified bounds.
    """
    log4 = math.log(ctx.x) ** 4
    root = math.sqrt(ctx.x)
    if ctx.c > 0:
        upper = root * log4 / ctx.c**4
    else:
        upper = math.inf
    lower = root * ctx.sigma0 * ctx.sigma * ctx.c**4 / log4
    return ConclusionBounds(
        upper,
        lower,
        "shape values with implied constant 1; the true implied constants are unspecified",
    )


# --------------------------------------------------------------------------
# half-occupancy diagnostics


@dataclass(frozen=True)
class EpsilonProfile:
    """Deviations eps_p = nu_A(p) - p/2 and their moment sums.

    moment_quadratic: sum over p <= Y of (log p / p) (eps_p^2 / p^2);
    moment_linear:    sum over log x <= p <= Y of (1/p) (|eps_p| / p);
    moment_large:     sum over log x <= p <= Y with |eps_p| >= p/4 of 1/p.
    """

    entries: dict
    moment_quadratic: float
    moment_linear: float
    moment_large: float
    x: int
    y_limit: float


def ostmann_epsilon_profile(a, x: int, y_limit: float) -> EpsilonProfile:
    a = IntegerSet.coerce(a)
    if len(a) == 0:
        raise DomainError("A must be non-empty")
    if a.max > x:
        raise DomainError(f"A must lie in [1, {x}]")
    arr = a.array()
    entries = {}
    quad = 0.0
    linear = 0.0
    large = 0.0
    log_x = math.log(x)
    table = PrimeTable(max(int(y_limit) + 1, 3))
    for p in table.primes_between(1, y_limit).tolist():
        nu = int(np.unique(arr % p).size)
        eps = nu - p / 2.0
        entries[p] = eps
        quad += (math.log(p) / p) * (eps * eps) / (p * p)
        if log_x <= p <= y_limit:
            linear += (1.0 / p) * abs(eps) / p
            if abs(eps) >= p / 4.0:
                large += 1.0 / p
    return EpsilonProfile(entries, quad, linear, large, x, y_limit)


@dataclass(frozen=True)
class BudgetCheck:
    lhs: float
    budget: float
    within: bool


def larger_sieve_budget_check(
    profile_a: OccupancyProfile, profile_b: OccupancyProfile, x: int, y_limit: float
) -> BudgetCheck:
    """sum log p / nu_A(p) + sum log p / nu_B(p) over p <= Y against 2(log x + 1).

    The profiles must be complementary (nu_A + nu_B <= p) since no sum may
    vanish mod p; exceeding the budget would force one of the two sets to be
    tiny by the larger sieve.
    """
    lhs = 0.0
    for p in sorted(profile_a.entries):
        if p > y_limit:
            continue
        if p not in profile_b.entries:
            raise DomainError(f"profiles disagree on prime coverage at p={p}")
        nu_a = profile_a.get(p)
        nu_b = profile_b.get(p)
        if nu_a + nu_b > p:
            raise DomainError(
                f"complementarity violated at p={p}: {nu_a} + {nu_b} > {p}"
            )
        if nu_a <= 0 or nu_b <= 0:
            raise DomainError(f"need positive occupancy at p={p}")
        lhs += math.log(p) / nu_a + math.log(p) / nu_b
    budget = 2.0 * (math.log(x) + 1.0)
    return BudgetCheck(lhs, budget, lhs <= budget)


def half_occupancy_identity_gap(profile: EpsilonProfile) -> float:
    """Max gap in the algebraic identity
    log p/(p/2+eps) + log p/(p/2-eps) = p log p/((p/2)^2 - eps^2)
    over the profile's primes with |eps_p| < p/2."""
    worst = 0.0
    for p, eps in profile.entries.items():
        if abs(eps) >= p / 2.0:
            continue
        lp = math.log(p)
        lhs = lp / (p / 2.0 + eps) + lp / (p / 2.0 - eps)
        rhs = p * lp / ((p / 2.0) ** 2 - eps * eps)
        worst = max(worst, abs(lhs - rhs))
    return worst


def ostmann_multiplicative_diagnostic(a, x: int, y_limit: float) -> dict:
    """Ratio diagnostic for the closing large-sieve step of the
    half-occupancy analysis: f(p) = (p/2 + eps_p)/(p/2 - eps_p) when
    |eps_p| <= p/4 (0 otherwise), summed over squarefree supported
    n <= sqrt(x) and compared against sqrt(x)/log log x.  Diagnostic only.
    """
    prof = ostmann_epsilon_profile(a, x, y_limit)
    weights = {}
    for p, eps in prof.entries.items():
        if abs(eps) <= p / 4.0:
            weights[p] = (p / 2.0 + eps) / (p / 2.0 - eps)
    root = math.isqrt(x)
    support = sorted(p for p in weights if p <= root)
    total = _squarefree_weight_sum(support, lambda p: weights[p], root)
    bound = 2.0 * x / total if total > 0 else math.inf
    reference = math.sqrt(x) / math.log(math.log(x))
    return {
        "sum_f": total,
        "large_sieve_bound": bound,
        "reference_sqrtx_over_loglog": reference,
        "ratio": total / reference if reference > 0 else math.inf,
    }

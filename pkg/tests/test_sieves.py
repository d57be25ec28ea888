import math
import random

import numpy as np
import pytest

from sumsieve.errors import DomainError
from sumsieve.irreducibility import build_context
from sumsieve.primes import (
    And,
    Excluding,
    Interval,
    PrimeSubset,
    ResidueClass,
    all_primes,
    density_ratio_c,
)
from sumsieve.profiles import STRICT, scaled
from sumsieve.semigroup import enumerate_q
from sumsieve.sieves import (
    OccupancyProfile,
    ShiftSet,
    inverse_sieve_lower_bound,
    large_sieve_bound,
    larger_sieve_bound,
    middlek_bound,
    occupancy,
    prop_smallkbv_bound,
    prop_smallkscs_bound,
    selberg_bound,
    sift_count,
)
from sumsieve.sumset import IntegerSet


def sift_count_elementwise(s, shifts, ps) -> int:
    """Independent oracle: per-element loop, primes innermost."""
    plist = ps.primes().tolist()
    shift_list = list(getattr(shifts, "values", shifts))
    count = 0
    for v in s:
        ok = True
        for p in plist:
            r = v % p
            if any(r == a % p for a in shift_list):
                ok = False
                break
        if ok:
            count += 1
    return count


class TestOccupancy:
    def test_examples(self, table_1e4):
        ps3 = PrimeSubset(table_1e4, Interval(2, 3))
        prof = occupancy(IntegerSet([1, 4, 7, 10]), ps3)
        assert prof.get(3) == 1  # all = 1 mod 3
        ps2 = PrimeSubset(table_1e4, Interval(1, 2))
        assert occupancy(IntegerSet([1, 2]), ps2).get(2) == 2
        assert occupancy(IntegerSet([1, 2]), ps2, variant="nonzero").get(2) == 1

    def test_against_direct_residue_sets(self, table_1e4):
        rng = random.Random(1)
        ps = PrimeSubset(table_1e4, Interval(90, 110))
        for _ in range(30):
            a = IntegerSet(rng.sample(range(0, 5000), 50))
            prof = occupancy(a, ps)
            for p in ps.primes().tolist():
                assert prof.get(p) == len({v % p for v in a})


class TestSiftCount:
    def test_no_primes(self, table_1e4):
        ps = PrimeSubset(table_1e4, Interval(0, 1))
        assert sift_count(range(1, 101), [0], ps) == 100

    def test_sift_by_everything(self, table_1e4):
        ps = PrimeSubset(table_1e4, Interval(1, 100))
        # only n = 1 has no prime factor at or below its value
        assert sift_count(range(1, 101), [0], ps) == 1

    def test_matches_elementwise_oracle(self, table_1e4):
        rng = random.Random(2)
        for _ in range(25):
            s = IntegerSet(rng.sample(range(1, 3000), rng.randrange(50, 300)))
            shifts = ShiftSet.coerce(rng.sample(range(0, 3000), rng.randrange(1, 5)))
            lo = rng.randrange(2, 40)
            ps = PrimeSubset(table_1e4, Interval(lo, lo + rng.randrange(10, 200)))
            assert sift_count(s, shifts, ps) == sift_count_elementwise(s, shifts, ps)

    def test_large_prime_equality_path(self, table_1e4):
        # subset includes primes beyond every element: congruence = equality
        ps = PrimeSubset(table_1e4, Interval(50, 10**4))
        s = IntegerSet([10, 20, 30])
        assert sift_count(s, [20], ps) == sift_count_elementwise(s, [20], ps) == 2


class TestLargerSieve:
    def test_nu_one_gives_bound_one(self, table_1e4):
        ps = PrimeSubset(table_1e4, Interval(31, 100))
        prof = OccupancyProfile({p: 1 for p in ps.primes().tolist()})
        rep = larger_sieve_bound(prof, ps, 961)
        assert rep.valid
        assert rep.bound == pytest.approx(1.0, rel=1e-12)

    def test_nonpositive_denominator_invalid(self, table_1e4):
        # squares up to 31^2 with the narrow window: denominator < 0
        squares = IntegerSet([i * i for i in range(1, 32)])
        ps = PrimeSubset(table_1e4, Interval(31, 100))
        rep = larger_sieve_bound(occupancy(squares, ps), ps, 961)
        assert not rep.valid
        assert rep.bound == math.inf

    def test_squares_with_wide_prime_set(self, table_1e4):
        squares = IntegerSet([i * i for i in range(1, 32)])
        ps = PrimeSubset(table_1e4, Interval(1, 250))
        prof = occupancy(squares, ps)
        rep = larger_sieve_bound(prof, ps, 961)
        # oracle: the formula assembled directly
        log_n = math.log(961)
        num = sum(math.log(p) for p in ps.primes().tolist()) - log_n
        den = sum(math.log(p) / prof.get(p) for p in ps.primes().tolist()) - log_n
        assert rep.valid
        assert rep.bound == pytest.approx(num / den, rel=1e-12)
        assert rep.bound >= 31

    def test_zero_occupancy_reports_empty(self, table_1e4):
        ps = PrimeSubset(table_1e4, Interval(2, 5))
        prof = OccupancyProfile({3: 0, 5: 2})
        rep = larger_sieve_bound(prof, ps, 100)
        assert not rep.valid and rep.bound == 0.0

    def test_full_occupancy_formula_consistency(self, table_1e4):
        # nu(p) = min(p, k) must allow any k-element set
        k = 12
        ps = PrimeSubset(table_1e4, Interval(1, 1000))
        prof = OccupancyProfile({p: min(p, k) for p in ps.primes().tolist()})
        rep = larger_sieve_bound(prof, ps, 500)
        assert rep.valid and rep.bound >= k

    def test_randomised_soundness(self, table_1e4):
        rng = random.Random(3)
        checked = 0
        for _ in range(150):
            n_limit = rng.randrange(200, 4000)
            a = IntegerSet(rng.sample(range(1, n_limit + 1), rng.randrange(3, 50)))
            lo = rng.randrange(2, 50)
            ps = PrimeSubset(table_1e4, Interval(lo, lo + rng.randrange(30, 500)))
            if ps.is_empty():
                continue
            rep = larger_sieve_bound(occupancy(a, ps), ps, n_limit)
            if rep.valid:
                checked += 1
                assert rep.bound >= len(a) - 1e-9
        assert checked > 20


class TestLargeSieve:
    def test_omega_zero(self):
        rep = large_sieve_bound(OccupancyProfile({}), 100, 5)
        assert rep.denominator_L == 1.0
        assert rep.bound == 125.0

    def test_parity_example(self):
        rep = large_sieve_bound(OccupancyProfile({2: 1}), 100, 2)
        assert rep.denominator_L == 2.0
        assert rep.bound == 52.0
        odd_count = len([n for n in range(1, 101) if n % 2 == 1])
        assert odd_count <= rep.bound

    def test_half_classes_instance(self, table_1e4):
        rng = random.Random(4)
        x, q_limit = 10**4, 31
        primes = table_1e4.primes_between(1, q_limit).tolist()
        omega = {p: (p - 1) // 2 for p in primes}
        avoided = {p: rng.sample(range(p), omega[p]) for p in primes}
        arr = np.arange(1, x + 1)
        keep = np.ones(arr.shape, dtype=bool)
        for p, res in avoided.items():
            keep &= ~np.isin(arr % p, res)
        count = int(keep.sum())
        rep = large_sieve_bound(OccupancyProfile(omega), x, q_limit)
        assert rep.bound >= count

    def test_omega_equals_p_rejected(self):
        with pytest.raises(DomainError):
            large_sieve_bound(OccupancyProfile({3: 3}), 100, 5)

    def test_monotone_in_omega(self):
        rng = random.Random(5)
        for _ in range(60):
            q_limit = rng.randrange(3, 32)
            omega = {
                p: rng.randrange(1, p)
                for p in (2, 3, 5, 7, 11, 13)
                if p <= q_limit and rng.random() < 0.7
            }
            if not omega:
                continue
            x = rng.randrange(100, 10**4)
            base = large_sieve_bound(OccupancyProfile(omega), x, q_limit)
            p = rng.choice(sorted(omega))
            if omega[p] + 1 >= p:
                continue
            omega[p] += 1
            after = large_sieve_bound(OccupancyProfile(omega), x, q_limit)
            assert after.denominator_L >= base.denominator_L - 1e-12


class TestSelberg:
    def test_empty_prime_set(self, table_1e4):
        ps = PrimeSubset(table_1e4, Interval(0, 1))
        rep = selberg_bound(range(1, 101), ps, [0], OccupancyProfile({}), 10)
        assert rep.bound == 100.0
        assert rep.sifted_count == 100

    def test_coprimality_instance(self, table_1e4):
        ps = PrimeSubset(table_1e4, Interval(10, 31))
        omega = OccupancyProfile({p: 1.0 for p in ps.primes().tolist()})
        rep = selberg_bound(range(1, 1001), ps, [0], omega, 31)
        assert rep.valid
        assert rep.bound >= rep.sifted_count
        # oracle for the sifted count: integers coprime to 11..31
        direct = sum(
            1
            for n in range(1, 1001)
            if all(n % p for p in (11, 13, 17, 19, 23, 29, 31))
        )
        assert rep.sifted_count == direct

    def test_smooth_set_two_shifts(self, table_1e4):
        from sumsieve.smooth import enumerate_smooth

        c_set = IntegerSet(enumerate_smooth(10**4, 7).tolist())
        ps = PrimeSubset(table_1e4, Interval(100, 200))
        omega_vals = {}
        for p in ps.primes().tolist():
            omega_vals[p] = min(2.0 * p / (p - 1), p - 1e-9)
        rep = selberg_bound(c_set, ps, [0, 2], OccupancyProfile(omega_vals), 141)
        assert rep.bound >= rep.sifted_count
        assert rep.main_term is not None and rep.remainder is not None

    def test_randomised_soundness_with_real_omegas(self, table_1e4):
        rng = random.Random(6)
        for _ in range(60):
            size = rng.randrange(100, 1500)
            start = rng.randrange(1, 3000)
            c_set = IntegerSet(range(start, start + size))
            k = rng.randrange(1, 5)
            shifts = ShiftSet.coerce(rng.sample(range(0, start + size), k))
            lo = rng.randrange(5, 80)
            ps = PrimeSubset(table_1e4, Interval(lo, lo + rng.randrange(20, 150)))
            plist = ps.primes().tolist()
            if not plist:
                continue
            omega = OccupancyProfile(
                {p: rng.uniform(0.0, min(p - 1e-9, 3.0 * k)) for p in plist}
            )
            rep = selberg_bound(c_set, ps, shifts, omega, rng.randrange(2, 20))
            assert rep.bound >= rep.sifted_count - 1e-6


class TestInverseSieve:
    def test_empty_window_vacuous(self, table_1e4):
        ps = PrimeSubset(table_1e4, Interval(0, 1))
        rep = inverse_sieve_lower_bound(IntegerSet([1, 2]), ps, 50, 100)
        assert rep.lower <= 0
        assert rep.lhs == 0.0

    def test_pair_example(self, table_1e6):
        rep = inverse_sieve_lower_bound(
            IntegerSet([1, 2]), all_primes(table_1e6), 100, 100
        )
        assert rep.lhs >= rep.lower - 1e-12
        # both elements distinct mod every window prime
        assert rep.lhs == pytest.approx(2 * rep.recip_sum, rel=1e-12)

    def test_randomised(self, table_1e6):
        rng = random.Random(7)
        strengthened_seen = 0
        for _ in range(150):
            x = rng.randrange(100, 10**4)
            k = rng.randrange(2, 12)
            a = IntegerSet(rng.sample(range(1, x + 1), k))
            y = rng.uniform(10, 5000)
            kind = rng.randrange(3)
            if kind == 0:
                ps = all_primes(table_1e6)
            elif kind == 1:
                ps = PrimeSubset(table_1e6, ResidueClass(rng.choice([1, 3]), 4))
            else:
                ps = PrimeSubset(table_1e6, Interval(y / 4, y * 2))
            rep = inverse_sieve_lower_bound(a, ps, y, x)
            assert rep.lhs >= rep.lower - 1e-9
            assert rep.lhs >= rep.base_lower - 1e-9
            if rep.strengthened:
                strengthened_seen += 1
                assert rep.lhs >= (rep.k / 2) * rep.recip_sum - 1e-9
        assert strengthened_seen > 0

    def test_validation(self, table_1e4):
        with pytest.raises(DomainError):
            inverse_sieve_lower_bound(IntegerSet([1]), all_primes(table_1e4), 50, 100)
        with pytest.raises(DomainError):
            inverse_sieve_lower_bound(IntegerSet([1, 2]), all_primes(table_1e4), 5, 100)


def make_scaled_context(table, rng, x=10**4, set_size=1500, k=3):
    """A scaled-profile context with non-empty P0* and k within range."""
    modulus, residue = rng.choice([(4, 1), (4, 3), (3, 1)])
    p0 = PrimeSubset(table, ResidueClass(residue, modulus))
    banned = frozenset(p0.primes_in(1, x).tolist())
    carrier = enumerate_q(PrimeSubset(table, Excluding(banned)), x)
    size = min(set_size, len(carrier))
    s = IntegerSet(rng.sample(carrier.elements, size))
    c = density_ratio_c(p0, x, window_floor_exponent=0.3)
    sigma = len(s) / x
    k_target = rng.uniform(max(4 * k, 20), 60)
    star_min = rng.uniform(4 * k + 1, min(55.0, k_target * 1.8))
    profile = scaled(
        k_coefficient=k_target * sigma * c * c / math.log(x) ** 2,
        star_exponent=math.log(star_min) / math.log(k_target),
        c_floor_exponent=0.3,
    )
    ctx = build_context(s, s, p0, x, profile)
    return ctx, s


class TestSmallK:
    def test_empty_star_invalid(self, table_1e6):
        rng = random.Random(8)
        ctx, s = make_scaled_context(table_1e6, rng)
        strict_ctx = build_context(s, s, ctx.ps, ctx.x, STRICT)
        if strict_ctx.ps_star.is_empty():
            rep = prop_smallkscs_bound(s, [0, 1], strict_ctx)
            assert not rep.valid
            assert "P0*" in rep.reason

    def test_scs_scaled_soundness(self, table_1e6):
        rng = random.Random(9)
        hits = 0
        for _ in range(25):
            k = rng.randrange(2, 6)
            ctx, s = make_scaled_context(table_1e6, rng, k=k)
            shifts = ShiftSet.coerce(rng.sample(range(0, ctx.x), k))
            rep = prop_smallkscs_bound(s, shifts, ctx)
            assert rep.profile == "scaled"
            if rep.valid and rep.hypotheses_ok:
                hits += 1
                assert rep.bound >= rep.sifted_count
        assert hits >= 20

    def test_k_range_enforced(self, table_1e6):
        rng = random.Random(10)
        ctx, s = make_scaled_context(table_1e6, rng)
        with pytest.raises(DomainError):
            prop_smallkscs_bound(s, ShiftSet.coerce(range(1000)), ctx)

    def test_bv_scaled_soundness(self, table_1e6):
        rng = random.Random(11)
        hits = 0
        for _ in range(15):
            k = rng.randrange(2, 5)
            ctx, s = make_scaled_context(table_1e6, rng, k=k, set_size=1200)
            shifts = ShiftSet.coerce(rng.sample(range(0, ctx.x), k))
            rep = prop_smallkbv_bound(s, shifts, ctx, rng.randrange(40, 70))
            if rep.valid and rep.hypotheses_ok:
                hits += 1
                assert rep.bound >= rep.sifted_count
                assert rep.main_term >= 0 and rep.remainder >= 0
        assert hits >= 10

    def test_bv_rejects_divisible_elements(self, table_1e6):
        rng = random.Random(12)
        ctx, s = make_scaled_context(table_1e6, rng)
        star_primes = ctx.ps_star.primes_in(1, 1000)
        bad = IntegerSet(list(s.elements[:50]) + [int(star_primes[0]) * 2])
        with pytest.raises(DomainError):
            prop_smallkbv_bound(bad, [0, 1], ctx, 50)

    def test_zero_shift_residue_allowed(self, table_1e6):
        # shifts hitting 0 mod a star prime only shrink the nonzero occupancy
        rng = random.Random(13)
        ctx, s = make_scaled_context(table_1e6, rng, k=3)
        p = int(ctx.ps_star.primes_in(1, 100)[0])
        shifts = ShiftSet.coerce([0, p, 2 * p])
        rep = prop_smallkbv_bound(s, shifts, ctx, 60)
        if rep.valid and rep.hypotheses_ok:
            assert rep.bound >= rep.sifted_count


class TestMiddleK:
    def _sample_set(self, rng, x, size):
        return IntegerSet(sorted(rng.sample(range(1, x), size)))

    def test_ordering_violation_raises(self, table_1e4):
        ps = all_primes(table_1e4)
        with pytest.raises(DomainError):
            middlek_bound(IntegerSet([1, 2]), [0, 1], ps, 10**6, 30, 90)

    def test_full_k_branch(self, table_1e4):
        rng = random.Random(14)
        x = 10**10
        ps = PrimeSubset(table_1e4, Interval(100, 450))
        s = self._sample_set(rng, x, 5000)
        shifts = ShiftSet.coerce(rng.sample(range(0, x), 2))
        rep = middlek_bound(
            s, shifts, ps, x, 200, 450, profile=scaled(window_coefficient=0.5)
        )
        assert rep.branch == "full-k"
        assert rep.hypotheses_ok
        assert rep.bound >= rep.sifted_count

    def test_reduced_k_branch(self, table_1e4):
        rng = random.Random(15)
        x = 10**10
        ps = PrimeSubset(table_1e4, Interval(100, 450))
        s = self._sample_set(rng, x, 5000)
        shifts = ShiftSet.coerce(rng.sample(range(0, x), 50))
        rep = middlek_bound(
            s, shifts, ps, x, 200, 450, profile=scaled(window_coefficient=0.5)
        )
        assert rep.branch == "reduced-k"
        assert rep.bound >= rep.sifted_count

    def test_threshold_failure_invalid(self, table_1e4):
        rng = random.Random(16)
        x = 10**10
        # a window with almost no subset primes
        ps = PrimeSubset(table_1e4, And((Interval(100, 450), ResidueClass(1, 97))))
        s = self._sample_set(rng, x, 100)
        rep = middlek_bound(s, [0, 5], ps, x, 200, 450)
        assert not rep.valid

    def test_strict_profile_at_desk_scale_fails_threshold(self, table_1e6):
        rng = random.Random(17)
        x = 10**6
        ps = all_primes(table_1e6)
        s = self._sample_set(rng, x, 2000)
        rep = middlek_bound(s, [0, 7], ps, x, 15, 40, profile=STRICT)
        # strict 8 k log x is unreachable with these tiny windows
        assert rep.branch in (None, "reduced-k")
        assert not rep.valid or not rep.hypotheses_ok

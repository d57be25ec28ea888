import math
import random

import numpy as np
import pytest

from sumsieve.errors import CapacityError, DomainError
from sumsieve.primes import Interval, PrimeSubset
from sumsieve.smooth import (
    SmoothQuery,
    bv_discrepancy_sum,
    dickman_rho,
    dickman_self_check,
    enumerate_smooth,
    psi,
    psi_coprime,
    regularity_ratio,
    smooth_tuple_count,
)


def smooth_numbers_by_factoring(x: int, y: int) -> list:
    """Oracle: factor every n <= x by trial division and keep the y-smooth."""
    out = []
    for n in range(1, x + 1):
        m = n
        p = 2
        ok = True
        while p * p <= m:
            if m % p == 0:
                if p > y:
                    ok = False
                    break
                while m % p == 0:
                    m //= p
            p += 1
        if ok and m > 1 and m > y:
            ok = False
        if ok:
            out.append(n)
    return out


class TestPsi:
    def test_small_exact_values(self):
        assert psi(SmoothQuery(10, 2)) == 4  # {1, 2, 4, 8}
        assert psi(SmoothQuery(100, 3)) == 20

    def test_y_at_least_x(self):
        assert psi(SmoothQuery(50, 50)) == 50
        assert psi(SmoothQuery(50, 97)) == 50

    def test_matches_factoring_oracle(self):
        rng = random.Random(1)
        for _ in range(10):
            x = rng.randrange(50, 3000)
            y = rng.randrange(2, 40)
            expected = smooth_numbers_by_factoring(x, y)
            assert psi(SmoothQuery(x, y)) == len(expected)
            assert enumerate_smooth(x, y).tolist() == expected

    def test_recurrence_matches_enumeration_grid(self):
        for x in (10**3, 10**4, 10**5):
            for y in (2, 3, 5, 10, 30, 100):
                assert psi(SmoothQuery(x, y)) == int(enumerate_smooth(x, y).size)

    def test_monotone_in_x_and_y(self):
        rng = random.Random(2)
        for _ in range(20):
            x = rng.randrange(100, 10**4)
            y = rng.randrange(2, 100)
            base = psi(SmoothQuery(x, y))
            assert psi(SmoothQuery(x + rng.randrange(1, 500), y)) >= base
            assert psi(SmoothQuery(x, y + rng.randrange(1, 50))) >= base

    def test_progressions_partition(self):
        rng = random.Random(3)
        for _ in range(15):
            x = rng.randrange(100, 10**4)
            y = rng.randrange(2, 30)
            d = rng.randrange(1, 60)
            total = sum(psi(SmoothQuery(x, y, d, a)) for a in range(d))
            assert total == psi(SmoothQuery(x, y))

    def test_progression_against_enumeration(self):
        x, y, d = 10**4, 10, 7
        arr = enumerate_smooth(x, y)
        for a in range(d):
            assert psi(SmoothQuery(x, y, d, a)) == int((arr % d == a).sum())

    def test_cap(self):
        with pytest.raises(CapacityError):
            psi(SmoothQuery(10**9 + 1, 10))

    def test_work_budget(self):
        with pytest.raises(CapacityError):
            psi(SmoothQuery(10**8, 1000), work_budget=10)

    def test_query_validation(self):
        with pytest.raises(DomainError):
            SmoothQuery(10, 1)
        with pytest.raises(DomainError):
            SmoothQuery(10, 2, 5, None)
        with pytest.raises(DomainError):
            SmoothQuery(10, 2, 5, 7)


class TestPsiCoprime:
    def test_d_one(self):
        assert psi_coprime(SmoothQuery(100, 3), 1) == psi(SmoothQuery(100, 3))

    def test_large_prime_factors_no_op(self):
        # d with all prime factors above y removes nothing
        q = SmoothQuery(10**4, 10)
        assert psi_coprime(q, 13 * 17) == psi(q)

    def test_d_six_tiny(self):
        # 3-smooth numbers coprime to 6: only n = 1
        assert psi_coprime(SmoothQuery(100, 3), 6) == 1

    def test_against_enumeration_filter(self):
        rng = random.Random(4)
        for _ in range(10):
            x = rng.randrange(100, 5000)
            y = rng.randrange(2, 30)
            d = rng.randrange(1, 100)
            arr = enumerate_smooth(x, y)
            expected = int(np.count_nonzero(np.gcd(arr, d) == 1))
            assert psi_coprime(SmoothQuery(x, y), d) == expected


class SimpsonCollocation:
    """Independent integrator for the delay equation via the integral
    identity u rho(u) = integral of rho over [u-1, u], solved pointwise on a
    uniform mesh with composite Simpson weights (no Runge-Kutta involved)."""

    def __init__(self, step=1.0 / 512.0):
        self.h = step
        self.per_unit = round(1.0 / step)
        # mesh over [0, 2]: exact
        self.grid = [0.0]
        self.vals = [1.0]
        n2 = 2 * self.per_unit
        for i in range(1, n2 + 1):
            u = i * self.h
            self.grid.append(u)
            self.vals.append(1.0 if u <= 1.0 else 1.0 - math.log(u))
        self.top = 2.0

    def _integral(self, i_lo, i_hi):
        # composite Simpson over mesh indices [i_lo, i_hi] (even count)
        total = self.vals[i_lo] + self.vals[i_hi]
        total += 4.0 * sum(self.vals[i_lo + 1 : i_hi : 2])
        total += 2.0 * sum(self.vals[i_lo + 2 : i_hi : 2])
        return total * self.h / 3.0

    def extend_to(self, target):
        while self.top < target - 1e-12:
            i = len(self.vals)
            u = i * self.h
            i_lo = i - self.per_unit
            # u rho(u) = I_known + w * rho(u) where w is rho(u)'s own
            # Simpson weight at the right endpoint
            known = (
                self.vals[i_lo]
                + 4.0 * sum(self.vals[i_lo + 1 : i - 1 : 2])
                + 2.0 * sum(self.vals[i_lo + 2 : i - 1 : 2])
                + 4.0 * self.vals[i - 1]
            ) * self.h / 3.0
            w = self.h / 3.0
            rho_u = known / (u - w)
            self.vals.append(rho_u)
            self.grid.append(u)
            self.top = u

    def rho(self, u):
        self.extend_to(u + self.h)
        i = round(u / self.h)
        if abs(i * self.h - u) < 1e-12:
            return self.vals[i]
        raise ValueError("query off-mesh")


class TestDickman:
    def test_one_on_unit_interval(self):
        for u in (0.0, 0.25, 0.5, 1.0):
            assert dickman_rho(u).rho == 1.0

    def test_closed_form_on_second_interval(self):
        assert dickman_rho(2.0).rho == pytest.approx(1 - math.log(2), abs=1e-12)
        assert dickman_rho(1.5).rho == pytest.approx(1 - math.log(1.5), abs=1e-12)

    def test_strictly_decreasing_beyond_one(self):
        us = np.linspace(1.0, 30.0, 200)
        vals = [dickman_rho(float(u)).rho for u in us]
        assert all(b < a for a, b in zip(vals, vals[1:]))
        assert all(v > 0 for v in vals)

    def test_against_simpson_collocation(self):
        oracle = SimpsonCollocation()
        for u in (3.0, 4.0, 5.0, 7.0, 10.0, 15.0, 20.0):
            mine = dickman_rho(u).rho
            theirs = oracle.rho(u)
            assert abs(mine - theirs) <= 1e-8, f"rho({u}): {mine} vs {theirs}"

    def test_integral_identity(self):
        rng = random.Random(5)
        for u in [1.0, 1.5, 2.0, 5.25] + [rng.uniform(1, 20) for _ in range(12)]:
            lhs = u * dickman_rho(u).rho
            total = 0.0
            lo = u - 1.0
            breaks = [lo] + [float(b) for b in range(math.ceil(lo), math.ceil(u))] + [u]
            for a, b in zip(breaks, breaks[1:]):
                if b <= a:
                    continue
                n = 256
                xs = np.linspace(a, b, n + 1)
                ys = np.array([dickman_rho(float(t)).rho for t in xs])
                h = (b - a) / n
                total += h / 3 * (ys[0] + ys[-1] + 4 * ys[1:-1:2].sum() + 2 * ys[2:-1:2].sum())
            assert abs(lhs - total) <= 1e-8, f"identity off at u={u}"

    def test_richardson_step_halving(self):
        gap = dickman_self_check([2.5, 3.5, 5.0, 8.0])
        assert gap <= 1e-9

    def test_far_out_values_finite_positive_decreasing(self):
        # relative accuracy is double-precision-limited far out; the values
        # must still be finite, positive and decreasing
        v30, v50, v100, v500 = (dickman_rho(u) for u in (30.0, 50.0, 100.0, 500.0))
        assert v30.rho > v50.rho > v100.rho >= v500.rho > 0
        for v in (v30, v50, v100, v500):
            assert math.isfinite(v.log_rho)

    def test_domain(self):
        with pytest.raises(DomainError):
            dickman_rho(-0.1)
        with pytest.raises(DomainError):
            dickman_rho(501.0)


class TestDiscrepancySum:
    def test_empty_subset_gives_zero(self, table_1e4):
        ps = PrimeSubset(table_1e4, Interval(0, 1))
        total, rows = bv_discrepancy_sum(SmoothQuery(10**4, 10), ps, 50, 2)
        assert total == 0.0 and rows == []

    def test_q_one_gives_zero(self, table_1e4):
        ps = PrimeSubset(table_1e4, Interval(50, 100))
        total, rows = bv_discrepancy_sum(SmoothQuery(10**4, 10), ps, 1, 2)
        assert total == 0.0 and rows == []

    def test_overlapping_primes_rejected(self, table_1e4):
        ps = PrimeSubset(table_1e4, Interval(5, 100))
        with pytest.raises(DomainError):
            bv_discrepancy_sum(SmoothQuery(10**4, 10), ps, 20, 2)

    def test_exact_value_cross_checked(self, table_1e4):
        # second pass with the loop order swapped: residues outermost
        x, y, q_limit, k_hat = 10**5, 20, 90, 2
        ps = PrimeSubset(table_1e4, Interval(50, 100))
        total, rows = bv_discrepancy_sum(SmoothQuery(x, y), ps, q_limit, k_hat)
        smooth = enumerate_smooth(x, y)
        support = ps.primes_in(1, q_limit**2).tolist()
        d_values = []

        def build(i, d, r):
            if d > 1:
                d_values.append((d, r))
            for j in range(i, len(support)):
                p = support[j]
                if d * p > q_limit**2:
                    break
                build(j + 1, d * p, r + 1)

        build(0, 1, 0)
        expected = 0.0
        for d, r in sorted(d_values):
            best = 0.0
            psi_d = int(np.count_nonzero(np.gcd(smooth, d) == 1))
            phi = sum(1 for a in range(d) if math.gcd(a, d) == 1)
            for a in range(d):
                if math.gcd(a, d) != 1:
                    continue
                cnt = int(np.count_nonzero(smooth % d == a))
                best = max(best, abs(cnt - psi_d / phi))
            expected += (3.0 * k_hat) ** r * best
        assert total == pytest.approx(expected, rel=1e-12)
        assert len(rows) == len(d_values)

    def test_rows_sorted_and_consistent(self, table_1e4):
        ps = PrimeSubset(table_1e4, Interval(40, 80))
        total, rows = bv_discrepancy_sum(SmoothQuery(10**4, 10), ps, 60, 3)
        ds = [row.d for row in rows]
        assert ds == sorted(ds)
        assert total == pytest.approx(sum(row.term for row in rows), rel=1e-12)

    def test_modulus_budget_carries_partial_progress(self, table_1e4):
        ps = PrimeSubset(table_1e4, Interval(40, 200))
        with pytest.raises(CapacityError) as err:
            bv_discrepancy_sum(
                SmoothQuery(10**4, 10), ps, 150, 2, modulus_work_cap=100
            )
        assert err.value.partial_sum >= 0.0
        assert hasattr(err.value, "partial_breakdown")


class TestTupleCount:
    def test_single_shift_is_psi(self):
        rep = smooth_tuple_count(10**4, 10, [0])
        assert rep.count == psi(SmoothQuery(10**4, 10))

    def test_pair_example_by_scan(self):
        rep = smooth_tuple_count(10**4, 10, [0, 1])
        smooth_set = set(enumerate_smooth(10**4 + 1, 10).tolist())
        direct = sum(
            1 for n in range(1, 10**4 + 1) if n in smooth_set and n + 1 in smooth_set
        )
        assert rep.count == direct

    def test_everything_smooth(self):
        rep = smooth_tuple_count(100, 200, [0, 5])
        assert rep.count == 100

    def test_comparators_present(self):
        rep = smooth_tuple_count(10**4, 10, [0, 2, 6])
        assert rep.u == pytest.approx(math.log(10**4) / math.log(10), rel=1e-12)
        assert rep.heuristic_u_super <= rep.heuristic_u_power

    def test_cap(self):
        with pytest.raises(CapacityError):
            smooth_tuple_count(10**8 + 1, 10, [0])


class TestScalingEchoes:
    def test_psi_ratio_trend_toward_half(self):
        # log Psi(x, log^2 x)/log x decreases monotonically toward 1/2
        ratios = []
        for x in (10**4, 10**5, 10**6, 10**7):
            y = int(math.log(x) ** 2)
            ratios.append(math.log(psi(SmoothQuery(x, y))) / math.log(x))
        assert all(b < a for a, b in zip(ratios, ratios[1:]))
        assert all(r > 0.5 for r in ratios)

    def test_regularity_ratio_is_finite_diagnostic(self):
        ratio = regularity_ratio(10**5, 30)
        assert 1.0 <= ratio < 50.0

"""Multiplicative arithmetic: Mobius, totient, triple-divisor counts,
squarefree supported enumeration and restricted multiplicative sums.

The comparison inequality implemented by ``check_comparison_inequality`` is a
finite theorem for completely multiplicative 0 <= f(p) <= g(p) < p; any
failure beyond tolerance is a bug, and the property suite treats it so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import DomainError
from .primes import PrimeSubset, PrimeTable, all_primes

EULER_GAMMA = 0.57721566490153286061

_COMPARISON_SLACK = 1e-9


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorisation by trial division, ascending primes."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p = 5
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 2 if p % 3 == 2 else 4  # skip multiples of 2 and 3
    if n > 1:
        out.append((n, 1))
    return out


def mobius(n: int) -> int:
    factors = factorize(n)
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def tau3(n: int) -> int:
    """Number of ordered triples (u, v, w) with uvw = n."""
    result = 1
    for _, e in factorize(n):
        result *= (e + 1) * (e + 2) // 2
    return result


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, n: int) -> "Factorization":
        return cls(n, tuple(factorize(n)))


# --------------------------------------------------------------------------
# multiplicative specs and restricted sums


@dataclass(frozen=True)
class MultiplicativeSpec:
    """Non-negative multiplicative function given by its prime values.

    Off the support the prime value is 0.  ``completely_multiplicative``
    means f(p^a) = f(p)^a; otherwise f is supported on squarefree numbers.
    """

    prime_values: Mapping[int, float]
    completely_multiplicative: bool = True

    def __post_init__(self):
        for p, v in self.prime_values.items():
            if v < 0:
                raise DomainError(f"negative value f({p}) = {v}")

    def at_prime(self, p: int) -> float:
        return float(self.prime_values.get(p, 0.0))

    def support(self) -> list[int]:
        return sorted(p for p, v in self.prime_values.items() if v != 0.0)


def enumerate_squarefree_supported(
    ps: PrimeSubset, bound: int
) -> Iterator[tuple[int, tuple[int, ...]]]:
    """All squarefree q <= bound with every prime factor in ps, ascending.

    Yields (q, prime factors); q = 1 comes first with an empty factorisation.
    """
    if bound < 1:
        raise DomainError(f"need bound >= 1, got {bound}")
    support = ps.primes_in(1, min(bound, ps.base.limit)).tolist()
    found: list[tuple[int, tuple[int, ...]]] = []

    def rec(i: int, q: int, factors: tuple[int, ...]):
        found.append((q, factors))
        for j in range(i, len(support)):
            p = support[j]
            if q * p > bound:
                break
            rec(j + 1, q * p, factors + (p,))

    rec(0, 1, ())
    found.sort()
    return iter(found)


def _squarefree_product_sum(support: list[float | int], values: dict, bound: int) -> float:
    """sum over squarefree supported q <= bound of prod_{p|q} values[p]."""
    total = 0.0

    def rec(i: int, q: int, term: float):
        nonlocal total
        total += term
        for j in range(i, len(support)):
            p = support[j]
            if q * p > bound:
                break
            rec(j + 1, q * p, term * values[p])

    rec(0, 1, 1.0)
    return total


def restricted_multiplicative_sum(
    spec: MultiplicativeSpec,
    ps: PrimeSubset,
    bound: int,
    mode: str = "squarefree",
) -> float:
    """Exact DFS sum restricted to ps-supported integers up to bound.

    mode="squarefree": sum over squarefree supported q of prod_{p|q} f(p)/p.
    mode="complete":   sum over all supported n of f(n)/n, f completely
                       multiplicative.
    Includes the n = 1 term (equal to 1).
    """
    if bound < 1:
        raise DomainError(f"need bound >= 1, got {bound}")
    if mode not in ("squarefree", "complete"):
        raise DomainError(f"unknown mode {mode!r}")
    support = [
        p
        for p in ps.primes_in(1, min(bound, ps.base.limit)).tolist()
        if spec.at_prime(p) != 0.0
    ]
    if mode == "squarefree":
        weights = {p: spec.at_prime(p) / p for p in support}
        return _squarefree_product_sum(support, weights, bound)

    total = 0.0

    def rec(i: int, n: int, term: float):
        nonlocal total
        total += term
        for j in range(i, len(support)):
            p = support[j]
            if n * p > bound:
                break
            w = spec.at_prime(p) / p
            m, t = n * p, term * w
            while True:
                rec(j + 1, m, t)
                if m * p > bound:
                    break
                m, t = m * p, t * w

    rec(0, 1, 1.0)
    return total


@dataclass(frozen=True)
class ComparisonResult:
    lhs: float
    rhs: float
    holds: bool


def check_comparison_inequality(
    f: MultiplicativeSpec, g: MultiplicativeSpec, bound: int, table: PrimeTable | None = None
) -> ComparisonResult:
    """Check sum f(n)/n >= prod(1 - g/p) * prod(1 - f/p)^(-1) * sum g(n)/n.

    Both sums run over n <= bound, both products over primes p <= bound.
    Requires 0 <= f(p) <= g(p) < p for every prime p <= bound.
    """
    if table is None:
        table = PrimeTable(max(bound, 2))
    union = sorted(set(f.support()) | set(g.support()))
    for p in union:
        if p > bound:
            continue
        fp, gp = f.at_prime(p), g.at_prime(p)
        if not (0.0 <= fp <= gp < p):
            raise DomainError(f"need 0 <= f(p) <= g(p) < p at p={p}: f={fp}, g={gp}")
    everything = all_primes(table)
    lhs = restricted_multiplicative_sum(f, everything, bound, mode="complete")
    sum_g = restricted_multiplicative_sum(g, everything, bound, mode="complete")
    log_ratio = 0.0
    for p in union:
        if p > bound:
            continue
        fp, gp = f.at_prime(p), g.at_prime(p)
        log_ratio += math.log1p(-gp / p) - math.log1p(-fp / p)
    rhs = math.exp(log_ratio) * sum_g
    return ComparisonResult(lhs, rhs, lhs >= rhs - _COMPARISON_SLACK)


def gamma_function(t: float) -> float:
    """Gamma(t) for t > 0 (relative error well below 1e-10)."""
    if t <= 0:
        raise DomainError(f"need t > 0, got {t}")
    return math.gamma(t)

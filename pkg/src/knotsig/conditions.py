"""(m,p)-signature conditions and the prime sets attached to them.

For p coprime to m(m+1), let a = (m+1)/m mod p.  The cyclic subgroup <a>
splits (Z/p)* into cosets; the (m,p)-condition asks that the signature
summed over every coset c<a> (at the points c a^i / p) vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable

import sympy

from .knotexpr import KnotExpr, _sig


class ConditionError(ValueError):
    pass


@dataclass(frozen=True)
class CosetDecomposition:
    m: int
    p: int
    a: int
    r: int
    cosets: tuple[tuple[int, ...], ...]

    @property
    def subgroup(self) -> tuple[int, ...]:
        return self.cosets[0]


def _orbit(a: int, c: int, p: int) -> list[int]:
    out, x = [], c
    while True:
        out.append(x)
        x = x * a % p
        if x == c:
            return out


def coset_decompose(m: int, p: int) -> CosetDecomposition:
    """Cosets of <(m+1)/m> in (Z/p)*, each listed in orbit order c, ca, ca^2, ...

    Cosets are ordered by their smallest element; the first is the subgroup.
    """
    if m < 1:
        raise ConditionError(f"m must be positive, got {m}")
    if p < 2:
        raise ConditionError(f"p must be > 1, got {p}")
    if gcd(p, m * (m + 1)) != 1:
        raise ConditionError(f"p = {p} is not coprime to m(m+1) = {m * (m + 1)}")
    a = (m + 1) * pow(m, -1, p) % p
    units = [c for c in range(1, p) if gcd(c, p) == 1]
    seen: set[int] = set()
    cosets = []
    for c in units:
        if c in seen:
            continue
        orb = _orbit(a, c, p)
        seen.update(orb)
        cosets.append(tuple(orb))
    return CosetDecomposition(m, p, a, len(cosets[0]), tuple(cosets))


@dataclass(frozen=True)
class ConditionReport:
    m: int
    p: int
    a: int
    r: int
    cosets: tuple[tuple[int, ...], ...]
    sums_twice: tuple[int, ...]
    jump_arguments: tuple[Fraction, ...]

    @property
    def sums(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(s, 2) for s in self.sums_twice)

    @property
    def passes(self) -> bool:
        return all(s == 0 for s in self.sums_twice)

    @property
    def verdict(self) -> str:
        return "pass" if self.passes else "fail"


def check_signature_conditions(e: KnotExpr, m: int, p: int) -> ConditionReport:
    dec = coset_decompose(m, p)
    values = {}
    jumps = []
    for c in range(1, p):
        if gcd(c, p) == 1:
            twice, null = _sig(e, Fraction(c, p))
            values[c] = twice
            if null:
                jumps.append(Fraction(c, p))
    sums = tuple(sum(values[c] for c in coset) for coset in dec.cosets)
    return ConditionReport(m, p, dec.a, dec.r, dec.cosets, sums, tuple(jumps))


def sigma_sum_twice(e: KnotExpr, p: int) -> int:
    """Twice the sum of sigma(i/p) over 0 < i < p."""
    return sum(_sig(e, Fraction(i, p))[0] for i in range(1, p))


@dataclass(frozen=True)
class AveragingReport:
    m: int
    p_max: int
    sums_twice: dict[int, int]

    @property
    def failures(self) -> list[int]:
        return [p for p, s in self.sums_twice.items() if s != 0]

    @property
    def passes(self) -> bool:
        return not self.failures


def valid_primes_for(m: int, p_max: int, odd_only: bool = False) -> list[int]:
    """All 1 < p <= p_max coprime to m(m+1) (composite p included)."""
    return [p for p in range(2, p_max + 1) if gcd(p, m * (m + 1)) == 1 and (p % 2 or not odd_only)]


def check_averaging(e: KnotExpr, m: int, p_max: int) -> AveragingReport:
    """Sigma_p(sigma) = 0 for every p <= p_max coprime to m(m+1)."""
    if p_max < 2:
        raise ConditionError("p_max must be at least 2")
    sums = {p: sigma_sum_twice(e, p) for p in valid_primes_for(m, p_max)}
    return AveragingReport(m, p_max, sums)


def _prime_powers(limit: int) -> Iterable[int]:
    for n in range(2, limit + 1):
        if len(sympy.factorint(n)) == 1:
            yield n


def prime_power_set(
    m: int,
    q_max: int,
    bound: int,
    exclude: Callable[[int], bool] | Iterable[int] | None = None,
) -> list[int]:
    """Prime powers r^n <= bound dividing (m+1)^q - m^q for a prime power q <= q_max.

    ``exclude`` is the caller's finite set of bad primes (a predicate or an
    iterable); prime powers of excluded primes are dropped.
    """
    if m < 1:
        raise ConditionError("m must be positive")
    if callable(exclude):
        bad = exclude
    else:
        banned = set(exclude or ())
        bad = lambda r: r in banned  # noqa: E731
    values = [(m + 1) ** q - m**q for q in _prime_powers(q_max)]
    out = []
    for n in _prime_powers(bound):
        r = next(iter(sympy.factorint(n)))
        if bad(r):
            continue
        if any(v % n == 0 for v in values):
            out.append(n)
    return out


def simple_prime_set(m: int, q_max: int) -> list[int]:
    """Primes p with gcd(p^2, (m+1)^q - m^q) = p for an odd prime power q <= q_max."""
    if q_max < 3:
        raise ConditionError("q_max must be at least 3")
    if m < 1:
        raise ConditionError("m must be positive")
    found: set[int] = set()
    for q in _prime_powers(q_max):
        if q % 2 == 0:
            continue
        v = (m + 1) ** q - m**q
        for p, k in sympy.factorint(v).items():
            if k == 1:
                found.add(p)
    return sorted(found)

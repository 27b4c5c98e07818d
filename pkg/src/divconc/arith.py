"""Factorization, divisor generation, and the classical arithmetic functions.

Everything downstream (window profiles, moments, range scans) is built on the
prime-exponent representation produced here.  All operations are pure; the
smallest-prime-factor table is immutable once built and safe to share across
workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import CapacityError

SIEVE_LIMIT_CAP = 10**8
DIVISOR_CAP = 1 << 20


@dataclass(frozen=True)
class Factorization:
    """Prime-exponent list of a positive integer, primes strictly increasing."""

    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def big_omega(self) -> int:
        return sum(e for _, e in self.factors)

    @property
    def tau(self) -> int:
        t = 1
        for _, e in self.factors:
            t *= e + 1
        return t

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    @property
    def radical(self) -> int:
        r = 1
        for p, _ in self.factors:
            r *= p
        return r


@dataclass(frozen=True)
class SieveTable:
    """Smallest-prime-factor table for 2 <= m <= limit; spf[m] divides m."""

    limit: int
    spf: np.ndarray


@dataclass(frozen=True)
class KernelPrefix:
    """Product of the k smallest distinct prime factors (the radical if k >= omega)."""

    source: Factorization
    k: int
    value: int


@dataclass(frozen=True)
class ClassicalStats:
    omega: int
    big_omega: int
    tau: int
    mu: int
    p_plus: int
    p_minus: int


def build_sieve(limit: int, cap: int = SIEVE_LIMIT_CAP) -> SieveTable:
    """Build a smallest-prime-factor table for 2..limit.

    Raises CapacityError outside 2 <= limit <= cap.
    """
    if limit < 2 or limit > cap:
        raise CapacityError(f"sieve limit {limit} outside [2, {cap}]")
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            seg = spf[p * p :: p]
            seg[seg == 0] = p
    unset = spf == 0
    spf[unset] = np.arange(limit + 1, dtype=np.int64)[unset]
    return SieveTable(limit=limit, spf=spf)


def small_primes(limit: int) -> list[int]:
    """All primes <= limit by a plain boolean sieve."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [p for p in range(2, limit + 1) if flags[p]]


def _trial_division(n: int) -> list[tuple[int, int]]:
    factors = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                factors.append((p, e))
        d += 6
    if n > 1:
        factors.append((n, 1))
    return factors


def factorize(n: int, table: Optional[SieveTable] = None) -> Factorization:
    """Factor n >= 1; uses the table when available, trial division otherwise."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    if n == 1:
        return Factorization(n=1, factors=())
    if table is not None and n <= table.limit:
        spf = table.spf
        factors = []
        m = n
        while m > 1:
            p = int(spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        factors.sort()
        return Factorization(n=n, factors=tuple(factors))
    return Factorization(n=n, factors=tuple(_trial_division(n)))


def divisors(f: Factorization, cap: int = DIVISOR_CAP) -> list[int]:
    """All divisors of n in ascending order; raises CapacityError past cap."""
    if f.tau > cap:
        raise CapacityError(f"{f.n} has {f.tau} divisors, cap is {cap}")
    divs = [1]
    for p, e in f.factors:
        pk = 1
        ext = []
        for _ in range(e):
            pk *= p
            ext.extend(d * pk for d in divs)
        divs.extend(ext)
    divs.sort()
    return divs


def classical(f: Factorization) -> ClassicalStats:
    """omega, Omega, tau, mu and the extreme prime factors (both 1 for n = 1)."""
    mu = 0 if any(e >= 2 for _, e in f.factors) else (-1) ** f.omega
    if f.omega == 0:
        p_plus = p_minus = 1
    else:
        p_minus = f.factors[0][0]
        p_plus = f.factors[-1][0]
    return ClassicalStats(
        omega=f.omega,
        big_omega=f.big_omega,
        tau=f.tau,
        mu=mu,
        p_plus=p_plus,
        p_minus=p_minus,
    )


def kernel_prefix(f: Factorization, k: int) -> KernelPrefix:
    """Product of the k smallest distinct primes of n (full radical if k >= omega)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    value = 1
    for p, _ in f.factors[: min(k, f.omega)]:
        value *= p
    return KernelPrefix(source=f, k=k, value=value)


def omega_below(f: Factorization, t: float) -> int:
    """Number of distinct prime factors not exceeding t."""
    return sum(1 for p, _ in f.factors if p <= t)


def growth_threshold(k: int) -> float:
    """Doubly exponential chain threshold exp(exp(k/5))."""
    return math.exp(math.exp(k / 5.0))


def regular_prime_chain(f: Factorization, xi: int, k_cap: int) -> bool:
    """True iff n is squarefree and its k-th smallest prime exceeds exp(exp(k/5))
    for every k with xi <= k <= k_cap that actually indexes a prime of n.

    An empty k-range (k_cap < xi) leaves only the squarefree requirement.
    """
    if not f.is_squarefree:
        return False
    primes = f.primes
    for k in range(max(xi, 1), min(k_cap, f.omega) + 1):
        if math.log(math.log(primes[k - 1])) <= k / 5.0:
            return False
    return True

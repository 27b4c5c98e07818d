"""Independent brute-force oracles used to freeze expected values.

Nothing here may share code paths with the package: divisors come from
pairwise trial division, window membership from a Decimal expansion of e
computed by its own series, moments from literal tuple enumeration, and the
representation counts from plain nested loops.
"""

from __future__ import annotations

import itertools
import math
from decimal import Decimal, getcontext

import numpy as np

getcontext().prec = 60


def _e_decimal() -> Decimal:
    total = Decimal(0)
    term = Decimal(1)
    for k in range(1, 60):
        total += term
        term /= k
    return total


E_DECIMAL = _e_decimal()


def trial_division_primes(limit: int) -> list[int]:
    """Primes up to limit by incremental trial division (no sieve)."""
    primes: list[int] = []
    for m in range(2, limit + 1):
        root = math.isqrt(m)
        for p in primes:
            if p > root:
                break
            if m % p == 0:
                break
        else:
            primes.append(m)
    return primes


def divisors_naive(n: int) -> list[int]:
    """Sorted divisors via the d <= sqrt(n) pairing, no factorization."""
    small = []
    large = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def in_window(d_prime: int, d: int) -> bool:
    """Exact d <= d' < e*d via the Decimal expansion of e."""
    return d <= d_prime and Decimal(d_prime) < E_DECIMAL * d


def delta_oracle(n: int) -> int:
    """Peak window count by exhaustive window enumeration."""
    divs = divisors_naive(n)
    best = 0
    for d in divs:
        count = sum(1 for dp in divs if in_window(dp, d))
        best = max(best, count)
    return best


def window_count_at(n: int, u: float) -> int:
    """Direct count of divisors in (e^u, e^(u+1)]."""
    count = 0
    for d in divisors_naive(n):
        ld = math.log(d)
        if u < ld <= u + 1.0:
            count += 1
    return count


def moment_brute(divs: list[int], q: int) -> float:
    """Literal sum over q-tuples within a factor e, weight 1 - log(max/min)."""
    logs = {d: math.log(d) for d in divs}
    total = 0.0
    for tup in itertools.product(divs, repeat=q):
        lo, hi = min(tup), max(tup)
        if Decimal(hi) < E_DECIMAL * lo:
            total += 1.0 - (logs[hi] - logs[lo])
    return total


def close_tuples_brute(divs: list[int], l: int) -> int:
    count = 0
    for tup in itertools.product(divs, repeat=l):
        lo, hi = min(tup), max(tup)
        if Decimal(hi) <= E_DECIMAL * lo:
            count += 1
    return count


def cross_moment_riemann(
    divs: list[int], p: int, j: int, q: int, step: float = 1e-6
) -> float:
    """Riemann sum of profile^j * shifted profile^(q-j) on a fine grid."""
    logs = np.array([math.log(d) for d in divs])
    shift = math.log(p)
    lo = logs[0] - 1.0 + shift - 2 * step
    hi = logs[-1] + 2 * step
    u = np.arange(lo, hi, step)

    def prof(at):
        # count of d with log d - 1 <= at < log d
        left = np.searchsorted(logs - 1.0, at, side="right")
        right = np.searchsorted(logs, at, side="right")
        return left - right

    f = prof(u).astype(np.float64)
    g = prof(u - shift).astype(np.float64)
    return float(np.sum(f**j * g ** (q - j)) * step)


def squarefree_count(x: int) -> int:
    """Count of squarefree n <= x by marking multiples of squares."""
    flags = bytearray([1]) * (x + 1)
    d = 2
    while d * d <= x:
        for m in range(d * d, x + 1, d * d):
            flags[m] = 0
        d += 1
    return sum(flags[1:])


def naive_waring(coeffs, exponents, x, allow_zero=True):
    """All representations by plain nested loops; returns value -> list of tuples."""
    low = 0 if allow_zero else 1
    k = len(coeffs) - 1
    reps: dict[int, list[tuple]] = {}

    def ranges(j):
        top = 0
        while coeffs[j] * (top + 1) ** exponents[j] <= x:
            top += 1
        return range(low, top + 1)

    for rest in itertools.product(*[ranges(j) for j in range(1, k + 1)]):
        partial = sum(c * v**l for c, v, l in zip(coeffs[1:], rest, exponents[1:]))
        if partial > x:
            continue
        n0 = low
        while partial + coeffs[0] * n0 * n0 <= x:
            v = partial + coeffs[0] * n0 * n0
            reps.setdefault(v, []).append((n0,) + rest)
            n0 += 1
    return reps


def naive_equal_pairs(reps: dict[int, list[tuple]]) -> int:
    """Ordered representation pairs with equal value and distinct leading term."""
    total = 0
    for tuples in reps.values():
        for a in tuples:
            for b in tuples:
                if a[0] != b[0]:
                    total += 1
    return total


def naive_representable(reps: dict[int, list[tuple]], x: int) -> int:
    return sum(1 for v in reps if 1 <= v <= x)

"""Compiled per-segment kernel for range scans.

For every n in a segment [lo, hi) this computes the peak divisor-window count,
the number of distinct prime factors, squarefreeness, and the prime-chain
regularity flag, all from scratch (no shared tables), so segments are
embarrassingly parallel and results do not depend on how the range is cut.

Window comparisons d' < e*d use doubles; rows where a comparison lands inside
the guard band are flagged and recomputed exactly by the caller.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from .arith import divisors, factorize
from .delta import delta_max

BLOCK = 1024  # accumulation block for deterministic float reductions

_E = 2.718281828459045


@njit(cache=True)
def _segment_raw(lo, hi, rk, xi, kcap):
    S = hi - lo
    root = int(math.sqrt(hi - 1.0))
    while (root + 1) * (root + 1) <= hi - 1:
        root += 1
    while root * root > hi - 1:
        root -= 1

    # divisor counts per position, then CSR fill: small divisors forward,
    # cofactors backward (they arrive in decreasing order, so filling from the
    # row end leaves every row fully sorted without an explicit sort)
    tau = np.zeros(S, dtype=np.int32)
    for d in range(1, root + 1):
        dd = d * d
        start = lo if lo > dd else dd
        m0 = ((start + d - 1) // d) * d
        for m in range(m0, hi, d):
            i = m - lo
            tau[i] += 1 if dd == m else 2

    row_start = np.empty(S + 1, dtype=np.int64)
    total = 0
    for i in range(S):
        row_start[i] = total
        total += tau[i]
    row_start[S] = total

    vals = np.empty(total, dtype=np.int64)
    fptr = row_start[:S].copy()
    bptr = row_start[1:].copy()
    for d in range(1, root + 1):
        dd = d * d
        start = lo if lo > dd else dd
        m0 = ((start + d - 1) // d) * d
        for m in range(m0, hi, d):
            i = m - lo
            vals[fptr[i]] = d
            fptr[i] += 1
            if dd != m:
                bptr[i] -= 1
                vals[bptr[i]] = m // d

    # two-pointer window sweep per row
    delta = np.empty(S, dtype=np.int32)
    amb = np.zeros(S, dtype=np.uint8)
    for i in range(S):
        a = row_start[i]
        b = row_start[i + 1]
        best = 1
        j = a
        for k in range(a, b):
            if j <= k:
                j = k + 1
            lim = vals[k] * _E
            while j < b and vals[j] < lim:
                j += 1
            guard = 1e-9 * lim + 1e-6
            if j < b and vals[j] - lim <= guard:
                amb[i] = 1
            if j - 1 > k and lim - vals[j - 1] <= guard:
                amb[i] = 1
            if j - k > best:
                best = j - k
        delta[i] = best

    # factorization pass: distinct primes, squarefreeness, chain regularity
    sieve = np.ones(root + 1, dtype=np.uint8) if root >= 1 else np.ones(2, dtype=np.uint8)
    if root >= 1:
        sieve[0] = 0
        if root >= 1:
            sieve[1] = 0
        p = 2
        while p * p <= root:
            if sieve[p]:
                m = p * p
                while m <= root:
                    sieve[m] = 0
                    m += p
            p += 1

    omega = np.zeros(S, dtype=np.uint8)
    mu2 = np.ones(S, dtype=np.uint8)
    viol = np.zeros(S, dtype=np.uint8)
    rem = np.empty(S, dtype=np.int64)
    for i in range(S):
        rem[i] = lo + i
    rk_max = rk[kcap] if kcap >= xi else 0.0

    for p in range(2, root + 1):
        if not sieve[p]:
            continue
        m0 = ((lo + p - 1) // p) * p
        if p <= rk_max:
            for m in range(m0, hi, p):
                i = m - lo
                k = omega[i] + 1
                if k >= xi and k <= kcap and p <= rk[k]:
                    viol[i] = 1
                omega[i] = k
        else:
            for m in range(m0, hi, p):
                omega[m - lo] += 1
        pe = p * p
        m0 = ((lo + pe - 1) // pe) * pe
        for m in range(m0, hi, pe):
            mu2[m - lo] = 0
        pe = p
        while pe <= hi - 1:
            m0 = ((lo + pe - 1) // pe) * pe
            for m in range(m0, hi, pe):
                rem[m - lo] //= p
            if pe > (hi - 1) // p:
                break
            pe *= p

    for i in range(S):
        r = rem[i]
        if r > 1:
            k = omega[i] + 1
            omega[i] = k
            if k >= xi and k <= kcap and r <= rk_max and r <= rk[k]:
                viol[i] = 1

    return delta, omega, mu2, viol, amb


def segment_stats(lo: int, hi: int, xi: int, kcap: int, rk: np.ndarray):
    """Per-n statistics for [lo, hi) with ambiguous window rows patched exactly."""
    delta, omega, mu2, viol, amb = _segment_raw(lo, hi, rk, xi, kcap)
    if amb.any():
        for i in np.nonzero(amb)[0]:
            n = lo + int(i)
            delta[i] = delta_max(divisors(factorize(n)))
    return delta, omega, mu2, viol

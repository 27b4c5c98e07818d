"""Exhaustive invariant sweeps, shared by the CLI verify command and the
acceptance suite.

Each function sweeps a stated range and returns a list of failure records
(empty on success).  Real-valued inequalities are checked with a relative
slack of 1e-9 so exact-equality cases (disjoint windows, unit profiles) are
not tripped by float roundoff; moment/oracle agreement uses the same 1e-9
relative tolerance.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ._kernel import segment_stats
from .aggregates import ScanConfig, sample_integers, tail_transfer_check
from .arith import build_sieve, divisors, factorize
from .delta import close_tuple_count, delta_max, moment_oracle, profile

REL_TOL = 1e-9
_SLACK = 1.0 + 1e-9


def delta_array(x: int, segment: int = 200_000) -> np.ndarray:
    """Peak window counts for all n <= x as an int32 array (index n-1)."""
    rk = np.zeros(1, dtype=np.float64)
    chunks = []
    lo = 1
    while lo <= x:
        hi = min(lo + segment, x + 1)
        delta, _, _, _ = segment_stats(lo, hi, 1, 0, rk)
        chunks.append(delta)
        lo = hi
    return np.concatenate(chunks)


def subadditivity_failures(max_n: int = 300) -> list[dict]:
    """delta(m*n) <= tau(m) * delta(n) for all m, n <= max_n."""
    deltas = delta_array(max_n * max_n)
    table = build_sieve(max_n)
    taus = [0] * (max_n + 1)
    for m in range(1, max_n + 1):
        taus[m] = factorize(m, table).tau
    failures = []
    for m in range(1, max_n + 1):
        tm = taus[m]
        for n in range(1, max_n + 1):
            if deltas[m * n - 1] > tm * deltas[n - 1]:
                failures.append(
                    {"invariant": "subadditivity", "m": m, "n": n,
                     "lhs": int(deltas[m * n - 1]), "rhs": tm * int(deltas[n - 1])}
                )
    return failures


def moment_oracle_failures(
    max_n: int = 2000, q_values: Sequence[int] = (1, 2, 3, 4)
) -> list[dict]:
    """Breakpoint moments agree with the tuple-sum oracle to 1e-9 relative."""
    table = build_sieve(max_n)
    failures = []
    for n in range(1, max_n + 1):
        divs = divisors(factorize(n, table))
        sf = profile(divs)
        for q in q_values:
            bp = sf.integral_power(q)
            oracle = moment_oracle(divs, q).value
            if abs(bp - oracle) > REL_TOL * max(abs(oracle), 1.0):
                failures.append(
                    {"invariant": "moment_oracle", "n": n, "q": q,
                     "breakpoint": bp, "oracle": oracle}
                )
    return failures


def profile_integral_failures(max_n: int = 10**5) -> list[dict]:
    """First moment and profile integral both equal tau(n), to 1e-12 * tau."""
    table = build_sieve(max_n)
    failures = []
    for n in range(1, max_n + 1):
        f = factorize(n, table)
        sf = profile(divisors(f))
        integral = sf.integral_power(1)
        if abs(integral - f.tau) > 1e-12 * f.tau:
            failures.append(
                {"invariant": "profile_integral", "n": n,
                 "integral": integral, "tau": f.tau}
            )
    return failures


def concentration_bound_failures(max_n: int = 10**5, q_max: int = 6) -> list[dict]:
    """delta(n) <= 2 * M_q(n)^(1/q) for every n <= max_n and q <= q_max."""
    table = build_sieve(max_n)
    failures = []
    for n in range(1, max_n + 1):
        divs = divisors(factorize(n, table))
        dv = delta_max(divs)
        sf = profile(divs)
        for q in range(1, q_max + 1):
            mq = sf.integral_power(q)
            if dv > 2.0 * mq ** (1.0 / q) * _SLACK:
                failures.append(
                    {"invariant": "concentration_bound", "n": n, "q": q,
                     "delta": dv, "moment": mq}
                )
    return failures


def squarefree_lower_failures(max_n: int = 10**5) -> list[dict]:
    """4^omega = tau^2 <= support * M_2 on squarefree n <= max_n."""
    table = build_sieve(max_n)
    failures = []
    for n in range(1, max_n + 1):
        f = factorize(n, table)
        if not f.is_squarefree:
            continue
        divs = divisors(f)
        sf = profile(divs)
        lhs = 4.0**f.omega
        rhs = sf.support_length() * sf.integral_power(2)
        if lhs > rhs * _SLACK:
            failures.append(
                {"invariant": "squarefree_lower", "n": n, "lhs": lhs, "rhs": rhs}
            )
    return failures


def moment_inequality_failures(
    max_n: int = 10**4, q_max: int = 8, close_l_max: int = 4
) -> list[dict]:
    """Per-n moment inequalities up to order q_max:

    - Hoelder chain: M_j * M_(q-j) <= M_2 * M_(q-2) for 2 <= j <= q-2
    - interpolation: M_l <= M_2^((q-l-2)/(q-4)) * M_(q-2)^((l-2)/(q-4)), q >= 5
    - close tuples: count_l <= 2^l * M_l for l <= close_l_max
    - trivial bounds: tau^2 <= support * M_2, support <= tau, M_q <= tau^q
    """
    table = build_sieve(max_n)
    failures = []

    def fail(name, n, **kw):
        failures.append({"invariant": name, "n": n, **kw})

    for n in range(1, max_n + 1):
        f = factorize(n, table)
        divs = divisors(f)
        sf = profile(divs)
        tau = f.tau
        m = [0.0] + [sf.integral_power(q) for q in range(1, q_max + 1)]
        support = sf.support_length()
        for q in range(4, q_max + 1):
            bound = m[2] * m[q - 2]
            for j in range(2, q - 1):
                if m[j] * m[q - j] > bound * _SLACK:
                    fail("hoelder_chain", n, q=q, j=j, lhs=m[j] * m[q - j], rhs=bound)
        for q in range(5, q_max + 1):
            for l in range(2, q - 1):
                rhs = m[2] ** ((q - l - 2) / (q - 4)) * m[q - 2] ** ((l - 2) / (q - 4))
                if m[l] > rhs * _SLACK:
                    fail("interpolation", n, q=q, l=l, lhs=m[l], rhs=rhs)
        for l in range(1, close_l_max + 1):
            count = close_tuple_count(divs, l)
            if count > 2**l * m[l] * _SLACK:
                fail("close_tuple_bound", n, l=l, count=count, rhs=2**l * m[l])
        if tau * tau > support * m[2] * _SLACK:
            fail("trivial_tau_sq", n, lhs=tau * tau, rhs=support * m[2])
        if support > tau * _SLACK:
            fail("trivial_support", n, support=support, tau=tau)
        for q in range(1, q_max + 1):
            if m[q] > float(tau) ** q * _SLACK:
                fail("trivial_moment", n, q=q, moment=m[q], rhs=float(tau) ** q)
    return failures


def _cross_integrals(sf, shift: float, q_max: int) -> dict[tuple[int, int], float]:
    """Integrals of profile^j * translate^i for j, i >= 1, j + i <= q_max."""
    pts = sorted(set(sf.breakpoints) | {b + shift for b in sf.breakpoints})
    merged = [pts[0]]
    for b in pts[1:]:
        if b - merged[-1] > 1e-12:
            merged.append(b)
    acc: dict[tuple[int, int], float] = {
        (j, i): 0.0 for j in range(1, q_max) for i in range(1, q_max - j + 1)
    }
    for a, b in zip(merged, merged[1:]):
        mid = 0.5 * (a + b)
        vf = sf.value_at(mid)
        if vf == 0:
            continue
        vg = sf.value_at(mid - shift)
        if vg == 0:
            continue
        length = b - a
        fp = [1.0]
        gp = [1.0]
        for _ in range(q_max):
            fp.append(fp[-1] * vf)
            gp.append(gp[-1] * vg)
        for (j, i) in acc:
            acc[(j, i)] += length * fp[j] * gp[i]
    return acc


def recursion_failures(max_n: int = 10**5, q_max: int = 5) -> list[dict]:
    """On every squarefree prime chain: appending the next prime p doubles
    each moment plus the binomial cross term, exactly; the second moment at
    least doubles; the support at most doubles.

    Every squarefree s <= max_n is the extension of m = s / P^+(s) by its
    largest prime, so sweeping s covers every chain step once.
    """
    table = build_sieve(max_n)
    failures = []
    cache: dict[int, tuple[list[float], float]] = {}

    def fail(name, s, **kw):
        failures.append({"invariant": name, "n": s, **kw})

    for s in range(1, max_n + 1):
        f = factorize(s, table)
        if not f.is_squarefree:
            continue
        divs = divisors(f)
        sf = profile(divs)
        moments = [0.0] + [sf.integral_power(q) for q in range(1, q_max + 1)]
        support = sf.support_length()
        cache[s] = (moments, support)
        if f.omega == 0:
            continue
        p = f.factors[-1][0]
        m_val = s // p
        m_moments, m_support = cache[m_val]
        sf_m = profile(divisors(factorize(m_val, table)))
        cross = _cross_integrals(sf_m, math.log(p), q_max)
        for q in range(2, q_max + 1):
            w = sum(math.comb(q, j) * cross[(j, q - j)] for j in range(1, q))
            expected = 2.0 * m_moments[q] + w
            if abs(moments[q] - expected) > REL_TOL * max(abs(moments[q]), 1.0):
                fail("moment_recursion", s, q=q, p=p, got=moments[q], expected=expected)
        if moments[2] < 2.0 * m_moments[2] / _SLACK:
            fail("second_moment_growth", s, got=moments[2], floor=2.0 * m_moments[2])
        if support > 2.0 * m_support * _SLACK:
            fail("support_doubling", s, got=support, ceiling=2.0 * m_support)
    return failures


def tail_transfer_failures(x: int = 10**7, samples: int = 10**4, seed: int = 1) -> list[dict]:
    """delta(n) <= delta(kernel) * 2^excess on a seeded sample of n <= x."""
    sample = sample_integers(x, samples, seed)
    report = tail_transfer_check(ScanConfig(x=x), sample)
    return [
        {"invariant": "tail_transfer", "n": row.n, "delta": row.delta_n,
         "bound": row.bound}
        for row in report.rows
        if not row.ok
    ]


SUITES = {
    "subadditivity": (subadditivity_failures, {"max_n": ("--max", 300)}),
    "moment-oracle": (moment_oracle_failures, {"max_n": ("--max", 2000)}),
    "profile-integral": (profile_integral_failures, {"max_n": ("--max", 10**5)}),
    "concentration": (concentration_bound_failures, {"max_n": ("--max", 10**5)}),
    "squarefree-lower": (squarefree_lower_failures, {"max_n": ("--max", 10**5)}),
    "moment-inequalities": (moment_inequality_failures, {"max_n": ("--max", 10**4)}),
    "recursion": (recursion_failures, {"max_n": ("--max", 10**5)}),
    "tail-transfer": (
        tail_transfer_failures,
        {"x": ("--x", 10**7), "samples": ("--samples", 10**4), "seed": ("--seed", 1)},
    ),
}

"""Divisor-window profiles, the concentration function, and its moments.

For n with divisors d, the profile at u counts divisors in the window
(e^u, e^(u+1)], so divisor d is active for u in [log d - 1, log d).  The
concentration value is the peak of that profile; moments are exact integrals
of its integer powers, computed on the breakpoint decomposition.

All window comparisons of the form d' < e * d run in double precision with a
guard band; near-boundary cases are resolved exactly in integer arithmetic
against a 40-digit fixed-point constant for e (e * d is irrational, so true
ties cannot occur).
"""

from __future__ import annotations

import cmath
import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

from .errors import CapacityError

# floor(e * 10^40); e*d is never an integer, so d' < e*d  <=>  d'*10^40 <= E_NUM*d
E_NUM = 27182818284590452353602874713526624977572
E_DEN = 10**40
_E = math.e

MERGE_EPS = 1e-12
GUARD_REL = 1e-9
ORACLE_CAP = 10**8
_FLOAT_MAX_LOG = 708.0


def lt_e_times(a: int, b: int) -> bool:
    """Exact predicate a < e * b for positive integers."""
    return a * E_DEN <= E_NUM * b


@dataclass(frozen=True)
class StepFunction:
    """Piecewise constant function: values[i] on [breakpoints[i], breakpoints[i+1]),
    zero outside the breakpoint range."""

    breakpoints: tuple[float, ...]
    values: tuple[int, ...]

    def value_at(self, u: float) -> int:
        i = bisect_right(self.breakpoints, u) - 1
        if i < 0 or i >= len(self.values):
            return 0
        return self.values[i]

    def integral_power(self, q: int) -> float:
        """Exact integral of value^q over the line, compensated summation."""
        total = 0.0
        c = 0.0
        bps = self.breakpoints
        for i, v in enumerate(self.values):
            term = (bps[i + 1] - bps[i]) * float(v) ** q
            y = term - c
            t = total + y
            c = (t - total) - y
            total = t
        return total

    def support_length(self) -> float:
        total = 0.0
        c = 0.0
        bps = self.breakpoints
        for i, v in enumerate(self.values):
            if v > 0:
                term = bps[i + 1] - bps[i]
                y = term - c
                t = total + y
                c = (t - total) - y
                total = t
        return total

    def max_value(self) -> int:
        return max(self.values)


@dataclass(frozen=True)
class MomentReport:
    q: int
    value: float
    method: str  # "breakpoint" or "tuple_oracle"


def profile(divs: Sequence[int]) -> StepFunction:
    """Breakpoint representation of the window-count function of a sorted
    divisor list.  Breakpoints closer than 1e-12 are merged so repeated
    divisor ratios cannot create zero-length intervals."""
    if not divs:
        raise ValueError("divisor list must be nonempty")
    events = []
    for d in divs:
        ld = math.log(d)
        events.append((ld - 1.0, 1))
        events.append((ld, -1))
    events.sort()
    bps: list[float] = []
    vals: list[int] = []
    cur = 0
    i = 0
    m = len(events)
    while i < m:
        pos = events[i][0]
        net = 0
        while i < m and events[i][0] - pos <= MERGE_EPS:
            net += events[i][1]
            i += 1
        if net == 0:
            continue
        if bps:
            vals.append(cur)
        bps.append(pos)
        cur += net
    if cur != 0:
        raise AssertionError("unbalanced window events")
    return StepFunction(breakpoints=tuple(bps), values=tuple(vals))


def delta_max(divs: Sequence[int]) -> int:
    """Peak window count: max over divisors d of #{d' | n : d <= d' < e*d}.

    Two-pointer sweep over the sorted list; boundary comparisons within the
    guard band are re-resolved with the exact integer predicate.
    """
    t = len(divs)
    if t == 0:
        raise ValueError("divisor list must be nonempty")
    fs = [float(d) for d in divs]
    best = 1
    j = 0
    for i in range(t):
        if j <= i:
            j = i + 1
        lim = fs[i] * _E
        while j < t and fs[j] < lim:
            j += 1
        guard = GUARD_REL * lim
        while j < t and fs[j] - lim <= guard and lt_e_times(divs[j], divs[i]):
            j += 1
        while j - 1 > i and lim - fs[j - 1] <= guard and not lt_e_times(divs[j - 1], divs[i]):
            j -= 1
        if j - i > best:
            best = j - i
    return best


def _check_power_range(max_value: int, q: int) -> None:
    if q < 1:
        raise ValueError("q must be >= 1")
    if max_value > 1 and q * math.log(max_value) > _FLOAT_MAX_LOG:
        raise CapacityError(f"value^{q} with value {max_value} overflows doubles")


def moment(divs: Sequence[int], q: int) -> MomentReport:
    """q-th moment of the window profile by exact breakpoint integration."""
    sf = profile(divs)
    _check_power_range(sf.max_value(), q)
    return MomentReport(q=q, value=sf.integral_power(q), method="breakpoint")


def moment_oracle(divs: Sequence[int], q: int, cap: int = ORACLE_CAP) -> MomentReport:
    """Same moment evaluated as the sum over q-tuples of divisors lying within
    a factor e of each other, each weighted by 1 - log(max/min).  Tuples are
    grouped by their (min, max) index pair; the count of q-tuples drawn from a
    window of w+1 divisors that hit both ends is (w+1)^q - 2w^q + (w-1)^q.
    """
    t = len(divs)
    if t == 0:
        raise ValueError("divisor list must be nonempty")
    if q < 1:
        raise ValueError("q must be >= 1")
    if t**q > cap:
        raise CapacityError(f"tuple count {t}^{q} exceeds oracle cap {cap}")
    logs = [math.log(d) for d in divs]
    total = 0.0
    comp = 0.0
    for i in range(t):
        term = 1.0  # the all-equal tuple
        j = i + 1
        while j < t and lt_e_times(divs[j], divs[i]):
            w = j - i
            count = (w + 1) ** q - 2 * w**q + (w - 1) ** q
            if count:
                term += count * (1.0 - (logs[j] - logs[i]))
            j += 1
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
    return MomentReport(q=q, value=total, method="tuple_oracle")


def support_measure(divs: Sequence[int]) -> float:
    """Total length of the union of windows [log d - 1, log d)."""
    return profile(divs).support_length()


def close_tuple_count(divs: Sequence[int], l: int, cap: int = ORACLE_CAP) -> int:
    """Number of l-tuples of divisors with max <= e * min (exact integer count)."""
    t = len(divs)
    if t == 0:
        raise ValueError("divisor list must be nonempty")
    if l < 1:
        raise ValueError("l must be >= 1")
    if t**l > cap:
        raise CapacityError(f"tuple count {t}^{l} exceeds cap {cap}")
    total = 0
    j = 0
    for i in range(t):
        if j <= i:
            j = i + 1
        while j < t and lt_e_times(divs[j], divs[i]):
            j += 1
        w = j - i  # window size with min = divs[i]
        total += w**l - (w - 1) ** l
    return total


def _merged_breakpoints(sf: StepFunction, shift: float) -> list[float]:
    merged = sorted(set(sf.breakpoints) | {b + shift for b in sf.breakpoints})
    out = [merged[0]]
    for b in merged[1:]:
        if b - out[-1] > MERGE_EPS:
            out.append(b)
    return out


def _validate_shift_prime(divs: Sequence[int], p: int) -> None:
    if p < 2:
        raise ValueError("p must be >= 2")
    if divs[-1] % p == 0:
        raise ValueError(f"p = {p} divides n = {divs[-1]}")


def cross_moment(divs: Sequence[int], p: int, j: int, q: int) -> float:
    """Integral of profile^j times its translate by log p to the power q - j,
    evaluated exactly on the merged breakpoint set.  Requires 1 <= j <= q-1
    and p coprime to n."""
    if not 1 <= j <= q - 1:
        raise ValueError("need 1 <= j <= q - 1")
    _validate_shift_prime(divs, p)
    sf = profile(divs)
    shift = math.log(p)
    pts = _merged_breakpoints(sf, shift)
    total = 0.0
    comp = 0.0
    for a, b in zip(pts, pts[1:]):
        mid = 0.5 * (a + b)
        vf = sf.value_at(mid)
        if vf == 0:
            continue
        vg = sf.value_at(mid - shift)
        if vg == 0:
            continue
        term = (b - a) * float(vf) ** j * float(vg) ** (q - j)
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
    return total


def cross_moment_sum(divs: Sequence[int], p: int, q: int) -> float:
    """Binomial-weighted sum over j of the translated cross moments; this is
    exactly the extra mass the q-th moment picks up when n gains the new
    prime p."""
    if q < 2:
        raise ValueError("q must be >= 2")
    _validate_shift_prime(divs, p)
    sf = profile(divs)
    shift = math.log(p)
    pts = _merged_breakpoints(sf, shift)
    acc = [0.0] * (q + 1)  # acc[j] accumulates the j-th cross integral
    for a, b in zip(pts, pts[1:]):
        mid = 0.5 * (a + b)
        vf = sf.value_at(mid)
        if vf == 0:
            continue
        vg = sf.value_at(mid - shift)
        if vg == 0:
            continue
        length = b - a
        for j in range(1, q):
            acc[j] += length * float(vf) ** j * float(vg) ** (q - j)
    return sum(math.comb(q, j) * acc[j] for j in range(1, q))


def divisor_char_sum(divs: Sequence[int], theta: float) -> complex:
    """Sum over divisors of d^(i*theta) = exp(i * theta * log d)."""
    return sum(cmath.exp(1j * theta * math.log(d)) for d in divs)

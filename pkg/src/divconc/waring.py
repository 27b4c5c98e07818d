"""Representation counting for diagonal forms c0*n0^2 + c1*n1^l1 + ... <= x.

The enumerator streams (value, leading coordinate) pairs with the square
coordinate innermost, sorts by value, and groups in one linear pass.  From the
grouped table: V counts representable integers in [1, x]; N counts ordered
pairs of representations of a common value whose leading coordinates differ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CapacityError, ConfigurationError

TUPLE_CAP = 10**8


@dataclass(frozen=True)
class WaringForm:
    """Coefficients c_0..c_k and exponents l_0..l_k with l_0 = 2."""

    coeffs: tuple[int, ...]
    exponents: tuple[int, ...]
    allow_zero: bool = True

    @property
    def k(self) -> int:
        return len(self.coeffs) - 1

    def validate(self, strict: bool = False) -> None:
        if len(self.coeffs) != len(self.exponents):
            raise ConfigurationError("coeffs and exponents must have equal length")
        if len(self.coeffs) < 2:
            raise ConfigurationError("need k >= 1 (at least two terms)")
        if any(c < 1 for c in self.coeffs):
            raise ConfigurationError("coefficients must be positive integers")
        if any(l < 2 for l in self.exponents):
            raise ConfigurationError("exponents must be integers >= 2")
        if self.exponents[0] != 2:
            raise ConfigurationError("leading exponent must be 2")
        if min(self.exponents) != 2:
            raise ConfigurationError("minimal exponent must be 2")
        if strict:
            total = sum(Fraction(1, l) for l in self.exponents[1:])
            if total != Fraction(1, 2):
                raise ConfigurationError(
                    f"strict mode needs sum of 1/l_j over j >= 1 equal to 1/2, got {total}"
                )


@dataclass(frozen=True)
class ValueRecord:
    total: int
    leading: dict[int, int]  # leading coordinate -> representation count


@dataclass
class RepTable:
    x: int
    form: WaringForm
    records: dict[int, ValueRecord]
    total_tuples: int


def _int_root(v: int, l: int) -> int:
    """floor(v^(1/l)) for v >= 0, exact."""
    if v < 0:
        return -1
    if l == 2:
        return math.isqrt(v)
    r = int(round(v ** (1.0 / l)))
    while r > 0 and r**l > v:
        r -= 1
    while (r + 1) ** l <= v:
        r += 1
    return r


def tuple_count_estimate(form: WaringForm, x: int) -> float:
    """Product of the per-coordinate range sizes; upper bound on the tuple count."""
    est = 1.0
    for c, l in zip(form.coeffs, form.exponents):
        est *= (x / c) ** (1.0 / l) + 1.0
    return est


def enumerate_representations(
    form: WaringForm, x: int, cap: int = TUPLE_CAP
) -> RepTable:
    """Every tuple with form value <= x, grouped by value with a histogram of
    the leading coordinate.  Raises CapacityError when the estimated tuple
    count exceeds the cap."""
    form.validate()
    if x < 0:
        raise ConfigurationError("x must be nonnegative")
    est = tuple_count_estimate(form, x)
    if est > cap:
        raise CapacityError(f"estimated tuple count {est:.3g} exceeds cap {cap}")
    low = 0 if form.allow_zero else 1
    c0 = form.coeffs[0]
    pairs: list[tuple[int, int]] = []

    def rec(j: int, partial: int) -> None:
        if j == 0:
            budget = x - partial
            if budget < c0 * low * low:
                return
            top = math.isqrt(budget // c0)
            for n0 in range(low, top + 1):
                pairs.append((partial + c0 * n0 * n0, n0))
            return
        c = form.coeffs[j]
        l = form.exponents[j]
        top = _int_root((x - partial) // c, l)
        for nj in range(low, top + 1):
            rec(j - 1, partial + c * nj**l)

    rec(form.k, 0)
    pairs.sort()
    records: dict[int, ValueRecord] = {}
    i = 0
    m = len(pairs)
    while i < m:
        v = pairs[i][0]
        leading: dict[int, int] = {}
        j = i
        while j < m and pairs[j][0] == v:
            n0 = pairs[j][1]
            leading[n0] = leading.get(n0, 0) + 1
            j += 1
        records[v] = ValueRecord(total=j - i, leading=leading)
        i = j
    return RepTable(x=x, form=form, records=records, total_tuples=m)


def count_representable(table: RepTable) -> int:
    """Number of distinct representable integers v with 1 <= v <= x."""
    return sum(1 for v in table.records if 1 <= v <= table.x)


def count_equal_pairs(table: RepTable) -> int:
    """Ordered pairs of representations of a common value with distinct
    leading coordinates: sum over values of T^2 - sum of squared
    leading-coordinate counts."""
    total = 0
    for rec in table.records.values():
        total += rec.total * rec.total - sum(s * s for s in rec.leading.values())
    return total


@dataclass(frozen=True)
class WaringCurveRow:
    x: int
    pairs: int
    representable: int
    pair_ratio: float
    representable_ratio: float


def bound_curve(
    form: WaringForm,
    checkpoints: Sequence[int],
    a: float = 0.9803,
    cap: int = TUPLE_CAP,
) -> list[WaringCurveRow]:
    """N and V at each checkpoint with their bound-envelope ratios
    N / (x e^(a sqrt(log log x))) and V e^(a sqrt(log log x)) / x."""
    if not checkpoints:
        raise ConfigurationError("need at least one checkpoint")
    cps = list(checkpoints)
    if cps != sorted(cps):
        raise ConfigurationError("checkpoints must be ascending")
    table = enumerate_representations(form, cps[-1], cap=cap)
    values = sorted(table.records)
    rows = []
    i = 0
    pairs = 0
    representable = 0
    for c in cps:
        while i < len(values) and values[i] <= c:
            rec = table.records[values[i]]
            pairs += rec.total * rec.total - sum(s * s for s in rec.leading.values())
            if values[i] >= 1:
                representable += 1
            i += 1
        ll = math.log(math.log(c)) if c > 1 else 0.0
        envelope = math.exp(a * math.sqrt(max(ll, 0.0)))
        rows.append(
            WaringCurveRow(
                x=c,
                pairs=pairs,
                representable=representable,
                pair_ratio=pairs / (c * envelope),
                representable_ratio=representable * envelope / c,
            )
        )
    return rows

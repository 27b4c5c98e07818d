"""Multiplicative weight functions with a prime-power growth cap.

A weight is defined by its values on prime powers and evaluated as a product
over the factorization, which enforces multiplicativity by construction.
Each spec carries its prime mean value y and the growth cap A; evaluation
rejects any prime-power value exceeding A^nu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .arith import Factorization, SieveTable, factorize, small_primes
from .errors import WeightClassError

_CAP_SLACK = 1e-12


@dataclass(frozen=True)
class WeightSpec:
    """Nonnegative multiplicative function given on prime powers.

    y is the mean value on primes, a_cap the growth bound A with
    g(p^nu) <= A^nu.  kind tags the built-ins so range scans can use
    closed forms instead of per-prime callbacks.
    """

    name: str
    y: float
    a_cap: float
    value_at_prime_power: Callable[[int, int], float]
    kind: str = "custom"


def _unit_value(p: int, nu: int) -> float:
    return 1.0


def _squarefree_unit_value(p: int, nu: int) -> float:
    return 1.0 if nu == 1 else 0.0


UNIT = WeightSpec(name="unit", y=1.0, a_cap=1.0, value_at_prime_power=_unit_value, kind="unit")

SQUAREFREE_UNIT = WeightSpec(
    name="squarefree_unit",
    y=1.0,
    a_cap=1.0,
    value_at_prime_power=_squarefree_unit_value,
    kind="squarefree_unit",
)


def omega_power(y: float) -> WeightSpec:
    """Weight y^omega(n), i.e. value y on every prime power."""
    if y < 0:
        raise ValueError("y must be nonnegative")

    def value(p: int, nu: int, _y=y) -> float:
        return _y

    return WeightSpec(
        name=f"omega_power({y:g})",
        y=float(y),
        a_cap=max(float(y), 1.0),
        value_at_prime_power=value,
        kind="omega_power",
    )


def by_name(name: str, y: Optional[float] = None) -> WeightSpec:
    if name == "unit":
        return UNIT
    if name == "squarefree_unit":
        return SQUAREFREE_UNIT
    if name == "omega_power":
        if y is None:
            raise ValueError("omega_power weight needs a y parameter")
        return omega_power(y)
    raise ValueError(f"unknown weight {name!r}")


def evaluate(w: WeightSpec, f: Factorization) -> float:
    """g(n) as the product of prime-power values; checks the growth cap."""
    out = 1.0
    for p, nu in f.factors:
        v = w.value_at_prime_power(p, nu)
        if v < 0:
            raise WeightClassError(f"{w.name}({p}^{nu}) = {v} is negative")
        if v > w.a_cap**nu * (1.0 + _CAP_SLACK):
            raise WeightClassError(
                f"{w.name}({p}^{nu}) = {v} exceeds cap {w.a_cap}^{nu}"
            )
        out *= v
    return out


def _simpson(f: Callable[[float], float], a: float, b: float, panels: int) -> float:
    h = (b - a) / panels
    acc = f(a) + f(b)
    for k in range(1, panels):
        acc += f(a + k * h) * (4.0 if k % 2 else 2.0)
    return acc * h / 3.0


def _simpson_converge(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float,
    panels: int,
    max_doublings: int = 22,
) -> float:
    prev = _simpson(f, a, b, panels)
    for _ in range(max_doublings):
        panels *= 2
        cur = _simpson(f, a, b, panels)
        if abs(cur - prev) <= rel_tol * max(abs(cur), 1e-30):
            return cur
        prev = cur
    return prev


def _exp_over_u(u: float) -> float:
    # (e^u - 1) / u, extended continuously through u = 0
    if abs(u) < 1e-8:
        return 1.0 + 0.5 * u
    return math.expm1(u) / u


def li(x: float, rel_tol: float = 1e-11, initial_panels: int = 64) -> float:
    """Principal-value logarithmic integral, target relative accuracy ~1e-10.

    Computed as the exponential integral of log x: the singular part is
    removed analytically (its principal value integrates to log log x), the
    remainder is smooth and handled by step-halving composite Simpson.
    """
    if x <= 1.0:
        raise ValueError("li(x) implemented for x > 1 only")
    z = math.log(x)
    # integral of e^u/u for u below -1, via u = -1 - v on [0, 75]
    tail = _simpson_converge(
        lambda v: -math.exp(-1.0 - v) / (1.0 + v), 0.0, 75.0, rel_tol, initial_panels
    )
    mid = _simpson_converge(_exp_over_u, -1.0, z, rel_tol, initial_panels)
    return tail + mid + math.log(z)


@dataclass(frozen=True)
class PrimeSumResidual:
    x: float
    total: float
    y_li_x: float
    residual: float


def prime_sum_residual(w: WeightSpec, x: float) -> PrimeSumResidual:
    """Sum of g(p) over primes p <= x against the y*li(x) main term."""
    if x < 2:
        raise ValueError("x must be >= 2")
    total = 0.0
    for p in small_primes(int(x)):
        total += w.value_at_prime_power(p, 1)
    main = w.y * li(x)
    return PrimeSumResidual(x=x, total=total, y_li_x=main, residual=total - main)


def shiu_ratio(w: WeightSpec, x: int, table: Optional[SieveTable] = None) -> float:
    """Sum of g(n) for n <= x divided by x * (log x)^(y-1)."""
    if x < 2:
        raise ValueError("x must be >= 2")
    total = 1.0  # n = 1
    for n in range(2, x + 1):
        total += evaluate(w, factorize(n, table))
    return total / (x * math.log(x) ** (w.y - 1.0))

"""Weighted range scans and the derived reports.

A scan walks n = 1..x in segments, computing for every n the peak window
count, squarefreeness, distinct-prime count and chain regularity, and folds
them into the weighted sum S, the harmonic sums D and D_minus, a histogram of
peak values, and bound-ratio curves.

Determinism: per-n work is segment-local and exact; float contributions are
accumulated into blocks of 1024 consecutive n (absolute positions, so block
sums do not depend on segmentation), and blocks are combined with exactly
rounded summation.  Results are therefore bit-identical across worker counts
and segment sizes.

Iterated logarithms are natural-base throughout: log2 x means log log x.
"""

from __future__ import annotations

import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from multiprocessing import get_context
from typing import Optional, Sequence

import numpy as np

from ._kernel import BLOCK, segment_stats
from .arith import Factorization, build_sieve, divisors, factorize, kernel_prefix
from .delta import delta_max, profile
from .errors import CapacityError, ConfigurationError
from .weights import UNIT, WeightSpec, evaluate

SQRT2_LOG2 = math.sqrt(2.0) * math.log(2.0)  # ~0.980258
DEFAULT_A = 0.9803
DEFAULT_GAMMAS = (0.35332, 0.6102495, 0.693147)
QUANTILE_PROBS = (0.5, 0.9, 0.99, 0.999)
LOG_CONVENTION = "natural log; iterated logs are base-e iterates"
_ONE_PLUS_HALF_ROOT2 = 1.0 + math.sqrt(2.0) / 2.0


def loglog(x: float) -> float:
    """log log x, -inf style degeneracies left to the caller (x > 1 required)."""
    return math.log(math.log(x))


def default_xi(x: int) -> int:
    """max(1, floor(log log log x)): unbounded but tiny at desk scale."""
    if x <= 15:
        return 1
    ll = loglog(x)
    if ll <= 1.0:
        return 1
    return max(1, math.floor(math.log(ll)))


def k_cap_for(x: int, epsilon: float) -> int:
    """ceil((2 + epsilon) * log log x), 0 when log log x is not positive."""
    if x <= 3:
        return 0
    ll = loglog(x)
    if ll <= 0.0:
        return 0
    return math.ceil((2.0 + epsilon) * ll)


def moment_order_hint(k: int) -> int:
    """Diagnostic moment order ceil(2*sqrt(k)); reported, never asserted."""
    return math.ceil(2.0 * math.sqrt(k)) if k > 0 else 1


@dataclass(frozen=True)
class ScanConfig:
    x: int
    weight: WeightSpec = UNIT
    segment_size: int = 100_000
    a: float = DEFAULT_A
    epsilon: float = 0.1
    xi: Optional[int] = None
    histogram_cap: int = 10**6
    max_x: int = 10**8

    @property
    def xi_value(self) -> int:
        return self.xi if self.xi is not None else default_xi(self.x)

    @property
    def k_cap(self) -> int:
        return k_cap_for(self.x, self.epsilon)

    def validate(self) -> None:
        if self.x < 2:
            raise ConfigurationError("scan needs x >= 2")
        if self.x > self.max_x:
            raise CapacityError(f"x = {self.x} beyond configured limit {self.max_x}")
        if self.segment_size < 1:
            raise ConfigurationError("segment_size must be >= 1")
        if self.a <= 0:
            raise ConfigurationError("bound constant a must be positive")


def bound_envelopes(y: float, x: int, a: float) -> dict[str, float]:
    """Bound envelopes applicable to a weight with prime mean value y.

    Iterated-log factors are clamped (sqrt arguments at 0, power factors at 1)
    so rows exist below x = e^e; the clamping is a reporting convention only.
    """
    lx = math.log(x)
    llc = max(loglog(x), 0.0)
    env: dict[str, float] = {}
    if y >= 1.0:
        env["y_ge_1"] = x * lx ** (2.0 * y - 2.0) * math.exp(a * math.sqrt(llc))
    if y <= 0.5:
        f = max(llc, 1.0) if y == 0.5 else 1.0
        env["y_le_half"] = x * lx ** (y - 1.0) * f
    if y >= _ONE_PLUS_HALF_ROOT2:
        f = max(llc, 1.0) if y == _ONE_PLUS_HALF_ROOT2 else 1.0
        env["y_ge_1_plus_half_root2"] = x * lx ** (2.0 * y - 2.0) * f
    if y < 1.0:
        lll = max(math.log(llc), 0.0) if llc > 0.0 else 0.0
        env["y_lt_1"] = x * lx ** (y - 1.0) * math.exp(
            4.0 * math.log(3.0) / (1.0 - y) * lll * lll
        )
    return env


@dataclass
class ScanReport:
    x: int
    weight_name: str
    weight_y: float
    a: float
    epsilon: float
    xi: int
    k_cap: int
    q_diag: int
    S: float
    D: float
    D_minus: float
    delta_histogram: dict[int, int]
    histogram_overflow: int
    quantiles: list[tuple[float, int]]
    bound_ratios: dict[str, float]
    curve: Optional[list[dict]] = None
    log_convention: str = LOG_CONVENTION

    def to_json_dict(self) -> dict:
        return {
            "x": self.x,
            "weight": {"name": self.weight_name, "y": self.weight_y},
            "a": self.a,
            "epsilon": self.epsilon,
            "xi": self.xi,
            "k_cap": self.k_cap,
            "q_diag": self.q_diag,
            "S": self.S,
            "D": self.D,
            "D_minus": self.D_minus,
            "delta_histogram": {str(k): v for k, v in sorted(self.delta_histogram.items())},
            "histogram_overflow": self.histogram_overflow,
            "quantiles": [[p, v] for p, v in self.quantiles],
            "bound_ratios": dict(sorted(self.bound_ratios.items())),
            "curve": self.curve,
            "log_convention": self.log_convention,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, d: dict) -> "ScanReport":
        return cls(
            x=d["x"],
            weight_name=d["weight"]["name"],
            weight_y=d["weight"]["y"],
            a=d["a"],
            epsilon=d["epsilon"],
            xi=d["xi"],
            k_cap=d["k_cap"],
            q_diag=d["q_diag"],
            S=d["S"],
            D=d["D"],
            D_minus=d["D_minus"],
            delta_histogram={int(k): v for k, v in d["delta_histogram"].items()},
            histogram_overflow=d["histogram_overflow"],
            quantiles=[(p, v) for p, v in d["quantiles"]],
            bound_ratios=dict(d["bound_ratios"]),
            curve=d["curve"],
            log_convention=d["log_convention"],
        )


def _rk_table(k_cap: int) -> np.ndarray:
    rk = np.zeros(max(k_cap, 0) + 1, dtype=np.float64)
    for k in range(1, k_cap + 1):
        rk[k] = math.exp(math.exp(k / 5.0))
    return rk


def _weight_vectors(kind: str, y: float, lo: int, omega: np.ndarray, mu2: np.ndarray):
    """(g(n), mu(n)^2 g(n)) vectors for a builtin weight kind."""
    if kind == "unit":
        w = np.ones(len(omega), dtype=np.float64)
        return w, mu2.astype(np.float64)
    if kind == "omega_power":
        w = np.power(float(y), omega.astype(np.float64))
        return w, w * mu2
    if kind == "squarefree_unit":
        w = mu2.astype(np.float64)
        return w, w
    raise ValueError(f"no vectorized path for weight kind {kind!r}")


def _custom_weight_vectors(weight: WeightSpec, lo: int, hi: int):
    vals = np.empty(hi - lo, dtype=np.float64)
    for n in range(lo, hi):
        vals[n - lo] = evaluate(weight, factorize(n))
    return vals


def _block_pieces(lo: int, contrib: np.ndarray):
    """Sums of a contribution vector over absolute blocks of 1024 consecutive n."""
    n0 = lo - 1  # zero-based position of the first element
    first_block = n0 // BLOCK
    last_block = (n0 + len(contrib) - 1) // BLOCK
    offsets = [0]
    for b in range(first_block + 1, last_block + 1):
        offsets.append(b * BLOCK - n0)
    sums = np.add.reduceat(contrib, np.array(offsets, dtype=np.int64))
    ids = np.arange(first_block, last_block + 1, dtype=np.int64)
    return ids, sums


def _gamma_counts(lo: int, hi: int, delta: np.ndarray, gammas: Sequence[float]):
    """Exceedance counts of delta(n) > (log log n)^gamma over n in [max(lo,16), hi)."""
    start = max(lo, 16)
    if start >= hi:
        return [0] * len(gammas), 0
    d = delta[start - lo :]
    counts = []
    t_lo_base = loglog(start)
    t_hi_base = loglog(hi - 1)
    for g in gammas:
        f_lo = math.floor(t_lo_base**g)
        f_hi = math.floor(t_hi_base**g)
        if f_lo == f_hi:
            counts.append(int(np.count_nonzero(d > f_lo)))
        else:
            ns = np.arange(start, hi, dtype=np.float64)
            thr = np.floor(np.log(np.log(ns)) ** g)
            counts.append(int(np.count_nonzero(d > thr)))
    return counts, hi - start


def _scan_segment_worker(args):
    (idx, lo, hi, xi, kcap, rk_list, kind, y, gammas, hist_cap, custom) = args
    rk = np.array(rk_list, dtype=np.float64)
    delta, omega, mu2, viol = segment_stats(lo, hi, xi, kcap, rk)
    if custom is not None:
        w = _custom_weight_vectors(custom, lo, hi)
        wd = w * mu2
    else:
        w, wd = _weight_vectors(kind, y, lo, omega, mu2)
    deltaf = delta.astype(np.float64)
    ns = np.arange(lo, hi, dtype=np.float64)
    c_s = w * deltaf
    c_d = wd * deltaf / ns
    c_dm = c_d * viol
    pieces = {
        "S": _block_pieces(lo, c_s),
        "D": _block_pieces(lo, c_d),
        "D_minus": _block_pieces(lo, c_dm),
    }
    over = int(np.count_nonzero(delta > hist_cap))
    kept = delta[delta <= hist_cap]
    hist = np.bincount(kept)
    if gammas is not None:
        gcounts, gsample = _gamma_counts(lo, hi, delta, gammas)
    else:
        gcounts, gsample = None, 0
    return idx, lo, hi, pieces, hist, over, gcounts, gsample


def _segment_bounds(x: int, segment_size: int, checkpoints: Sequence[int]):
    seg = max(BLOCK, ((segment_size + BLOCK - 1) // BLOCK) * BLOCK)
    cuts = {1, x + 1}
    t = 1 + seg
    while t <= x:
        cuts.add(t)
        t += seg
    for c in checkpoints:
        cuts.add(c + 1)
    b = sorted(cuts)
    return list(zip(b, b[1:]))


def _run_scan(
    config: ScanConfig,
    checkpoints: Sequence[int] = (),
    workers: int = 1,
    gammas: Optional[Sequence[float]] = None,
):
    config.validate()
    checkpoints = list(checkpoints)
    if checkpoints != sorted(checkpoints):
        raise ConfigurationError("checkpoints must be ascending")
    if checkpoints and (checkpoints[0] < 2 or checkpoints[-1] > config.x):
        raise ConfigurationError("checkpoints must lie in [2, x]")
    xi = config.xi_value
    kcap = config.k_cap
    rk = tuple(_rk_table(kcap).tolist())
    kind = config.weight.kind
    custom = config.weight if kind == "custom" else None
    bounds = _segment_bounds(config.x, config.segment_size, checkpoints)
    args = [
        (i, lo, hi, xi, kcap, rk, kind, config.weight.y, tuple(gammas) if gammas else None,
         config.histogram_cap, custom)
        for i, (lo, hi) in enumerate(bounds)
    ]
    if workers > 1 and custom is None and len(args) > 1:
        ctx = get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            chunk = max(1, len(args) // (workers * 4))
            results = list(pool.map(_scan_segment_worker, args, chunksize=chunk))
    else:
        results = [_scan_segment_worker(a) for a in args]
    results.sort(key=lambda r: r[0])

    blocks = {"S": {}, "D": {}, "D_minus": {}}
    hist: dict[int, int] = {}
    overflow = 0
    gamma_totals = [0] * (len(gammas) if gammas else 0)
    gamma_sample = 0
    ckpt_set = set(checkpoints)
    snapshots: dict[int, float] = {}
    for idx, lo, hi, pieces, seg_hist, over, gcounts, gsample in results:
        for name, (ids, sums) in pieces.items():
            tgt = blocks[name]
            for b, s in zip(ids.tolist(), sums.tolist()):
                tgt[b] = tgt.get(b, 0.0) + s
        for v, c in enumerate(seg_hist.tolist()):
            if c:
                hist[v] = hist.get(v, 0) + c
        overflow += over
        if gcounts is not None:
            for i, c in enumerate(gcounts):
                gamma_totals[i] += c
            gamma_sample += gsample
        if hi - 1 in ckpt_set:
            snapshots[hi - 1] = math.fsum(blocks["S"].values())

    totals = {name: math.fsum(d.values()) for name, d in blocks.items()}
    return totals, hist, overflow, snapshots, gamma_totals, gamma_sample


def _quantiles_from_histogram(hist: dict[int, int], total: int):
    out = []
    items = sorted(hist.items())
    for p in QUANTILE_PROBS:
        need = p * total
        cum = 0
        val = items[-1][0] if items else 0
        for v, c in items:
            cum += c
            if cum >= need:
                val = v
                break
        out.append((p, val))
    return out


def _curve_row(config: ScanConfig, x: int, s_value: float) -> dict:
    row: dict = {"x": x, "S": s_value, "q_diag": moment_order_hint(k_cap_for(x, config.epsilon))}
    for name, env in bound_envelopes(config.weight.y, x, config.a).items():
        row[f"ratio_{name}"] = s_value / env
    return row


def scan(config: ScanConfig, workers: int = 1) -> ScanReport:
    """Exact weighted scan of n <= x; deterministic for fixed config."""
    totals, hist, overflow, _, _, _ = _run_scan(config, (), workers)
    return _build_report(config, totals, hist, overflow, None)


def _build_report(config, totals, hist, overflow, curve) -> ScanReport:
    s_value = totals["S"]
    ratios = {
        name: s_value / env
        for name, env in bound_envelopes(config.weight.y, config.x, config.a).items()
    }
    return ScanReport(
        x=config.x,
        weight_name=config.weight.name,
        weight_y=config.weight.y,
        a=config.a,
        epsilon=config.epsilon,
        xi=config.xi_value,
        k_cap=config.k_cap,
        q_diag=moment_order_hint(config.k_cap),
        S=s_value,
        D=totals["D"],
        D_minus=totals["D_minus"],
        delta_histogram=hist,
        histogram_overflow=overflow,
        quantiles=_quantiles_from_histogram(hist, config.x),
        bound_ratios=ratios,
        curve=curve,
    )


def bound_ratio_curve(
    config: ScanConfig, checkpoints: Sequence[int], workers: int = 1
) -> ScanReport:
    """Scan with S snapshots at each checkpoint, each divided by the bound
    envelopes applicable to the weight; returned as the report's curve rows."""
    if not checkpoints:
        raise ConfigurationError("need at least one checkpoint")
    totals, hist, overflow, snaps, _, _ = _run_scan(config, checkpoints, workers)
    curve = [_curve_row(config, c, snaps[c]) for c in checkpoints]
    return _build_report(config, totals, hist, overflow, curve)


@dataclass(frozen=True)
class NormalOrderRow:
    gamma: float
    exceedances: int
    sample_size: int
    fraction: float


def normal_order_report(
    config: ScanConfig,
    gammas: Sequence[float] = DEFAULT_GAMMAS,
    workers: int = 1,
) -> list[NormalOrderRow]:
    """Fraction of n in (15, x] whose peak window count exceeds
    (log log n)^gamma, one row per gamma."""
    if config.x < 16:
        raise ConfigurationError(
            "normal-order statistics need x >= 16 (log log n must be positive)"
        )
    _, _, _, _, totals, sample = _run_scan(config, (), workers, gammas=gammas)
    return [
        NormalOrderRow(gamma=g, exceedances=c, sample_size=sample, fraction=c / sample)
        for g, c in zip(gammas, totals)
    ]


def truncated_harmonic(config: ScanConfig, k: int) -> float:
    """Harmonic sum of mu^2 g(n) delta(prefix_k(n)) / n for n <= x, where
    prefix_k is the product of the k smallest distinct primes."""
    if k < 1:
        raise ConfigurationError("k must be >= 1")
    config.validate()
    table = build_sieve(config.x) if config.x >= 2 else None
    memo: dict[int, int] = {}
    total = 0.0
    for n in range(1, config.x + 1):
        f = factorize(n, table)
        if not f.is_squarefree:
            continue
        g = evaluate(config.weight, f)
        if g == 0.0:
            continue
        m = kernel_prefix(f, k).value
        dm = memo.get(m)
        if dm is None:
            dm = delta_max(divisors(factorize(m, table)))
            memo[m] = dm
        total += g * dm / n
    return total


@dataclass(frozen=True)
class OmegaTailReport:
    x: int
    threshold: float
    tail: float
    total: float
    ratio: float


def omega_tail_mass(config: ScanConfig, y_param: float) -> OmegaTailReport:
    """Mass of g(n) delta(n) carried by n with more than 2*y*loglog(x)
    distinct primes, and its share of the full sum.  For x < e^e the
    threshold is negative and every n qualifies."""
    if y_param < 1:
        raise ConfigurationError("y_param must be >= 1")
    config.validate()
    threshold = 2.0 * y_param * loglog(config.x)
    xi = config.xi_value
    kcap = config.k_cap
    rk = _rk_table(kcap)
    tail_terms = []
    all_terms = []
    lo = 1
    while lo <= config.x:
        hi = min(lo + config.segment_size, config.x + 1)
        delta, omega, mu2, _ = segment_stats(lo, hi, xi, kcap, rk)
        if config.weight.kind == "custom":
            w = _custom_weight_vectors(config.weight, lo, hi)
        else:
            w, _ = _weight_vectors(config.weight.kind, config.weight.y, lo, omega, mu2)
        contrib = w * delta
        all_terms.extend(contrib.tolist())
        tail_terms.extend(contrib[omega > threshold].tolist())
        lo = hi
    tail = math.fsum(tail_terms)
    total = math.fsum(all_terms)
    return OmegaTailReport(
        x=config.x,
        threshold=threshold,
        tail=tail,
        total=total,
        ratio=tail / total if total else 0.0,
    )


@dataclass(frozen=True)
class InductionParams:
    """Parameters for the sampled moment-growth induction checks."""

    lam: float
    gamma: float
    delta_exp: float
    e1: float = 2.7
    alpha: float = 0.2
    r: float = 10.0

    def validate(self) -> None:
        log2 = math.log(2.0)
        if not 1.0 < self.lam < 2.0:
            raise ConfigurationError(f"lam = {self.lam} must lie in (1, 2)")
        if not self.delta_exp * log2 / self.lam < self.gamma < 1.0:
            raise ConfigurationError(
                f"need delta*log2/lam < gamma < 1: "
                f"{self.delta_exp * log2 / self.lam:.6g} < {self.gamma} < 1 fails"
            )
        upper = self.lam * (self.gamma - 1.0) + 1.0 / log2
        if not 1.0 < self.delta_exp < upper:
            raise ConfigurationError(
                f"need 1 < delta < lam*(gamma-1) + 1/log2 = {upper:.6g}, "
                f"got delta = {self.delta_exp}"
            )
        if not 0.0 < self.e1 < math.e:
            raise ConfigurationError("e1 must lie in (0, e)")
        if self.alpha <= 0.0:
            raise ConfigurationError("alpha must be positive")
        if self.r <= 1.0 / self.alpha:
            raise ConfigurationError("need r > 1/alpha")


def induction_constants(params: InductionParams, shift: Optional[float] = None) -> dict:
    """Contraction constants of the induction step.  The exponent subtracted
    from alpha/lam is ambiguous in the source derivation, so it is a
    parameter; the default is gamma (the value the surrounding computation
    uses)."""
    s = params.gamma if shift is None else shift
    b = 2.0 ** (1.0 - params.delta_exp + params.delta_exp / params.lam) * math.exp(
        params.alpha / params.lam - s
    )
    g = 2.0 ** (params.delta_exp / params.lam) * math.exp(params.alpha / params.lam - s)
    return {"b": b, "g": g, "shift": s}


@dataclass
class InductionKRow:
    k: int
    samples: int = 0
    moment_growth_violations: int = 0
    recursion_violations: int = 0
    recursion_samples: int = 0
    delta_bound_violations: int = 0

    def fractions(self) -> dict:
        return {
            "moment_growth": self.moment_growth_violations / self.samples if self.samples else 0.0,
            "recursion": self.recursion_violations / self.recursion_samples
            if self.recursion_samples
            else 0.0,
            "delta_bound": self.delta_bound_violations / self.samples if self.samples else 0.0,
        }


@dataclass
class InductionReport:
    x: int
    xi: int
    params: InductionParams
    constants: dict
    per_k: dict[int, InductionKRow]
    sample_size: int

    def to_json_dict(self) -> dict:
        return {
            "x": self.x,
            "xi": self.xi,
            "params": {
                "lam": self.params.lam,
                "gamma": self.params.gamma,
                "delta_exp": self.params.delta_exp,
                "e1": self.params.e1,
                "alpha": self.params.alpha,
                "r": self.params.r,
            },
            "constants": self.constants,
            "sample_size": self.sample_size,
            "per_k": {
                str(k): {
                    "samples": row.samples,
                    "moment_growth_violations": row.moment_growth_violations,
                    "recursion_violations": row.recursion_violations,
                    "recursion_samples": row.recursion_samples,
                    "delta_bound_violations": row.delta_bound_violations,
                    "fractions": row.fractions(),
                }
                for k, row in sorted(self.per_k.items())
            },
        }


def section_kernel_rank(f: Factorization, x: int, xi: int) -> int:
    """Largest k <= omega(n) with log log p_k(n) < log log x - xi (0 if none)."""
    if x <= 3:
        return 0
    bound = loglog(x) - xi
    rank = 0
    for k, p in enumerate(f.primes, start=1):
        if math.log(math.log(p)) < bound:
            rank = k
        else:
            break
    return rank


def _truncated_kernel_value(f: Factorization, xi: int, k: int) -> int:
    """Product of p_j(n) for xi < j <= k (empty product when k <= xi)."""
    value = 1
    for j in range(xi + 1, k + 1):
        value *= f.primes[j - 1]
    return value


_REL_SLACK = 1.0 + 1e-12


def moment_induction_check(
    config: ScanConfig, params: InductionParams, sample: Sequence[int]
) -> InductionReport:
    """Replay the moment-growth induction on sampled squarefree integers.

    For each n and each admissible rank k this tests: the moment growth bound
    M_q <= 2^(delta*k) (q!)^gamma for q up to lam*k; the recursion bound with
    the e1^(-k) error term; and the peak bound delta <= r + e^(alpha*k/q)
    M_q^(1/q) at q = floor(lam*k).  Violation fractions are reported per k.
    """
    params.validate()
    config.validate()
    xi = config.xi_value
    per_k: dict[int, InductionKRow] = {}
    for n in sample:
        f = factorize(n)
        if not f.is_squarefree:
            raise ConfigurationError(f"sample value {n} is not squarefree")
        rank = section_kernel_rank(f, config.x, xi)
        if rank <= xi:
            continue
        # moments of each truncated kernel, reused across the k loop
        cache: dict[int, tuple[list[float], int]] = {}

        def kernel_data(k: int) -> tuple[list[float], int]:
            got = cache.get(k)
            if got is None:
                value = _truncated_kernel_value(f, xi, k)
                divs = divisors(factorize(value))
                sf = profile(divs)
                q_top = math.floor(params.lam * rank) + 1
                moments = [0.0] + [sf.integral_power(q) for q in range(1, q_top + 1)]
                got = (moments, delta_max(divs))
                cache[k] = got
            return got

        for k in range(xi + 1, rank + 1):
            row = per_k.setdefault(k, InductionKRow(k=k))
            row.samples += 1
            qk = math.floor(params.lam * k)
            moments, dval = kernel_data(k)
            growth = 2.0 ** (params.delta_exp * k)
            if any(
                moments[q] > growth * math.factorial(q) ** params.gamma * _REL_SLACK
                for q in range(1, qk + 1)
            ):
                row.moment_growth_violations += 1
            if dval > params.r + math.exp(params.alpha * k / qk) * moments[qk] ** (1.0 / qk):
                row.delta_bound_violations += 1
            if k < rank:
                row.recursion_samples += 1
                nxt, _ = kernel_data(k + 1)
                e1k = params.e1 ** (-k)
                bad = False
                for q in range(1, qk + 1):
                    cross = sum(
                        math.comb(q, j) * moments[j] * moments[q - j] for j in range(1, q)
                    )
                    if nxt[q] > (2.0 * moments[q] + e1k * cross) * _REL_SLACK:
                        bad = True
                        break
                if bad:
                    row.recursion_violations += 1
    return InductionReport(
        x=config.x,
        xi=xi,
        params=params,
        constants=induction_constants(params),
        per_k=per_k,
        sample_size=len(sample),
    )


@dataclass(frozen=True)
class TailTransferRow:
    n: int
    delta_n: int
    delta_kernel: int
    excess: int
    bound: int
    ok: bool


@dataclass
class TailTransferReport:
    x: int
    xi: int
    rows: list[TailTransferRow]
    violations: int
    max_ratio: float


def tail_transfer_check(config: ScanConfig, sample: Sequence[int]) -> TailTransferReport:
    """Verify delta(n) <= delta(kernel) * 2^(prime factors dropped, with
    multiplicity) for the truncated kernel of each sampled n.  This holds for
    every n; the report records the slack actually observed."""
    config.validate()
    xi = config.xi_value
    rows = []
    violations = 0
    max_ratio = 0.0
    for n in sample:
        f = factorize(n)
        rank = section_kernel_rank(f, config.x, xi)
        kernel = _truncated_kernel_value(f, xi, rank)
        dn = delta_max(divisors(f))
        dk = delta_max(divisors(factorize(kernel)))
        excess = f.big_omega - max(0, rank - xi)
        bound = dk * 2**excess
        ok = dn <= bound
        if not ok:
            violations += 1
        max_ratio = max(max_ratio, dn / bound)
        rows.append(
            TailTransferRow(n=n, delta_n=dn, delta_kernel=dk, excess=excess, bound=bound, ok=ok)
        )
    return TailTransferReport(
        x=config.x, xi=xi, rows=rows, violations=violations, max_ratio=max_ratio
    )


def sample_integers(
    x: int, count: int, seed: int, squarefree: bool = False
) -> list[int]:
    """Deterministic sample of integers in [2, x] drawn from the seed."""
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        n = rng.randrange(2, x + 1)
        if squarefree and not factorize(n).is_squarefree:
            continue
        out.append(n)
    return out

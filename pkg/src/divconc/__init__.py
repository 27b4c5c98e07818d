"""Divisor concentration toolkit.

Exact evaluation of the peak divisor-window count and its moment apparatus,
weighted range scans with bound-ratio curves, and representation counting for
diagonal forms.
"""

from .arith import (
    ClassicalStats,
    Factorization,
    KernelPrefix,
    SieveTable,
    build_sieve,
    classical,
    divisors,
    factorize,
    kernel_prefix,
    omega_below,
    regular_prime_chain,
)
from .delta import (
    MomentReport,
    StepFunction,
    close_tuple_count,
    cross_moment,
    cross_moment_sum,
    delta_max,
    divisor_char_sum,
    moment,
    moment_oracle,
    profile,
    support_measure,
)
from .weights import (
    SQUAREFREE_UNIT,
    UNIT,
    WeightSpec,
    evaluate,
    li,
    omega_power,
    prime_sum_residual,
    shiu_ratio,
)
from .aggregates import (
    InductionParams,
    InductionReport,
    ScanConfig,
    ScanReport,
    bound_ratio_curve,
    moment_induction_check,
    normal_order_report,
    omega_tail_mass,
    sample_integers,
    scan,
    tail_transfer_check,
    truncated_harmonic,
)
from .waring import (
    RepTable,
    WaringForm,
    bound_curve,
    count_equal_pairs,
    count_representable,
    enumerate_representations,
)
from .errors import CapacityError, ConfigurationError, WeightClassError

__version__ = "0.1.0"

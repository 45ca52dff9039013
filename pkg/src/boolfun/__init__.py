"""Exact Fourier analysis of Boolean-valued functions on the hypercube.

Everything is integer or dyadic-rational arithmetic; no floats enter any
mathematical result.  The headline checks: the sum of a function's n
singleton coefficients against the same sum for majority at the function's
degree, and the agreement of that bound with three derivative-based
reformulations.
"""

from .conjecture import (
    ConjectureReport,
    EquivalencePredicates,
    assert_equivalence,
    check_conjecture,
    equivalence_predicates,
)
from .core import (
    MAX_ARITY,
    BooleanFunction,
    BoolfunError,
    FourierSpectrum,
    InputError,
    InvariantError,
    builtin,
    conjunction,
    constant,
    degree,
    dictator,
    disjunction,
    evaluate,
    fourier_coefficient,
    from_hex,
    from_truth_table,
    function_from_spectrum,
    fwht,
    hex_digits,
    index_to_point,
    linear_sum,
    parity,
    point_to_index,
    singleton_masks,
    to_hex,
)
from .derivatives import (
    DerivativeDistribution,
    DerivativeTable,
    InfluenceProfile,
    derivative_distribution_counted,
    derivative_distribution_spectral,
    derivative_value_counts,
    discrete_derivative,
    expectation_of_derivative,
    influence,
    influence_profile,
    total_influence,
)
from .dyadic import HALF, ONE, ZERO, DyadicRational
from .majority import (
    MajorityProfile,
    expected_abs_sum,
    maj_bound,
    maj_linear_coefficient,
    majority,
    majority_profile,
)
from .scan import (
    ConjectureWitness,
    DegreeExtremal,
    EquivalenceWitness,
    ScanConfig,
    ScanResult,
    exhaustive_scan,
    merge_results,
    random_scan,
    run_scan,
    scan_sample_range,
    scan_table_range,
)

__version__ = "0.1.0"

__all__ = [
    "BooleanFunction",
    "BoolfunError",
    "ConjectureReport",
    "ConjectureWitness",
    "DegreeExtremal",
    "DerivativeDistribution",
    "DerivativeTable",
    "DyadicRational",
    "EquivalencePredicates",
    "EquivalenceWitness",
    "FourierSpectrum",
    "HALF",
    "InfluenceProfile",
    "InputError",
    "InvariantError",
    "MAX_ARITY",
    "MajorityProfile",
    "ONE",
    "ScanConfig",
    "ScanResult",
    "ZERO",
    "assert_equivalence",
    "builtin",
    "check_conjecture",
    "conjunction",
    "constant",
    "degree",
    "derivative_distribution_counted",
    "derivative_distribution_spectral",
    "derivative_value_counts",
    "dictator",
    "discrete_derivative",
    "disjunction",
    "equivalence_predicates",
    "evaluate",
    "exhaustive_scan",
    "expectation_of_derivative",
    "expected_abs_sum",
    "fourier_coefficient",
    "from_hex",
    "from_truth_table",
    "function_from_spectrum",
    "fwht",
    "hex_digits",
    "index_to_point",
    "influence",
    "influence_profile",
    "linear_sum",
    "maj_bound",
    "maj_linear_coefficient",
    "majority",
    "majority_profile",
    "merge_results",
    "parity",
    "point_to_index",
    "random_scan",
    "run_scan",
    "scan_sample_range",
    "scan_table_range",
    "singleton_masks",
    "to_hex",
    "total_influence",
]

"""Exact beta-continued fractions over real quadratic fields."""
from .beta import (
    BetaClass,
    BetaInt,
    BetaSpec,
    admissible_pair,
    beta_ceil,
    beta_floor,
    beta_integers_in,
    conjugate_ratio_bound,
    greedy_digits,
    is_beta_integer,
    make_beta,
)
from .cf import (
    CFOutcome,
    ConvergentTable,
    ExpansionTrace,
    Kind,
    approximation_check,
    continuant,
    convergents,
    eval_finite,
    eval_periodic,
    expand,
    format_word,
    parse_word,
    regular_cf_expand,
)
from .heights import HeightSq, galois_invariance_check, irrational_pq_count_bound, partial_quotient_bound, weil_height_squared
from .quadratic import FieldMismatchError, IntPoly2, QuadRat, canonicalize, parse_poly, parse_surd, sqrt_exact
from .theorems import (
    PeriodReport,
    TheoremViolation,
    aperiodic_witness,
    appendix_bound_check,
    automaton_trace,
    check_superteorem,
    mercat_threshold,
    perron_period_bound_check,
)

__version__ = "0.1.0"

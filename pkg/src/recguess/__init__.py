"""Guessing linear recurrences with polynomial coefficients from few terms.

The classical approach solves an overdetermined linear system and needs
about (r+1)(d+2) terms to pin down an order-r, degree-d recurrence.
This package implements the lattice point of view: the solution set of
the underdetermined system is an integer kernel lattice, computed
exactly via the Hermite normal form, and LLL reduction singles out the
short vector that corresponds to the actual recurrence, often from
roughly half as many terms.
"""

from .exact_linalg import (
    DimensionMismatchError,
    IntMatrix,
    MinorEnumerationLimitError,
    RatMatrix,
    clear_denominators,
    gram_det,
    hnf,
    integer_kernel,
    lattice_equal,
    minor_gcd,
    rational_kernel,
    rational_rank,
)
from .lattice import (
    DependentVectorsError,
    LatticeBasis,
    ReductionParams,
    is_lll_reduced,
    lll_reduce,
    lll_reduce_with_prefix,
    shortest_vector_bruteforce,
)
from .poly_basis import BasisFamily, STANDARD, eval_basis, make_family, to_standard
from .recurrence import (
    LeadingCoefficientZeroError,
    Recurrence,
    SequenceData,
    TooFewTermsError,
    fits_data,
    format_recurrence,
    from_vector,
    integrality_check,
    normalized,
    parse_recurrence,
    sequence_from,
    unroll,
)
from .modular import (
    ModularKernel,
    PivotProfileMismatchError,
    crt_merge,
    is_probable_prime,
    kernel_mod_p,
    lift_lattice,
    prime_stream,
)
from .guesser import (
    ALGORITHMS,
    GuessProblem,
    MinTermsResult,
    build_matrix,
    default_grid,
    guess_classical,
    guess_hnf_lll,
    guess_incremental,
    guess_modular,
    min_terms,
    run_cell,
)
from .analysis import (
    BruteForceSpec,
    BudgetExceededError,
    GenericModel,
    brute_force,
    bv_bitsize_estimate,
    bv_bound,
    generic_experiment,
    random_recurrence,
    soft_bound,
)

__version__ = "0.1.0"

"""Radix and pseudodigit representations of integer lattices by dilation matrices."""
from .criteria import (
    ConditionReport,
    PowerResult,
    Threshold,
    Verdict,
    check_conditions,
    cross_validate,
    find_power,
    jeong_condition,
)
from .digits import CONVENTION_F, CONVENTION_U, DigitSet, digit_set, divide
from .errors import (
    DegenerateMatrixError,
    DigitNotInSetError,
    DigitSetError,
    InconsistencyError,
    NonIntegralTransportError,
    NotDilationError,
    NotNormalError,
    PowerSearchError,
    RadixError,
    SingularMatrixError,
    StepBudgetExceeded,
)
from .lattice import GaussianRational, LatticeContext, transport
from .linalg import (
    IntMatrix,
    RatMatrix,
    charpoly,
    det,
    inverse,
    mu_exceeds,
    sigma_bounds,
    smith_normal_form,
    spectral_cert,
    verify_dilation,
)
from .norms import BoundsReport, bounds_report, norm_evaluator, norm_prime, norm_prime_normal, stein_gram
from .representation import (
    Kind,
    PseudodigitTable,
    Representation,
    atlas,
    candidate_points,
    classify,
    evaluate,
    orbit,
    pseudodigits,
    represent,
    yields_radix,
)

__version__ = "0.1.0"

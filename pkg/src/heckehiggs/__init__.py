"""Exact-arithmetic toolkit for Higgs pairs twisted by a rank-2 bundle
presented by point conditions on the projective line, with the spectral
correspondence in both directions and a stability certificate."""

__version__ = "0.1.0"

from .errors import (
    CommutationError,
    DegreeBoundError,
    DegreeLimitError,
    EigenvalueConditionError,
    FiberConditionError,
    HeckeHiggsError,
    InfeasibleBudgetError,
    NonIntegralError,
    NotInCommutantError,
    ParseError,
    RetryExhaustedError,
    UnsupportedRankError,
    ValidationError,
)
from .hecke import (
    HeckeData,
    HeckePoint,
    SplittingType,
    h0_of_twist,
    make_presentation,
    splitting_type,
)
from .higgs import (
    HiggsPair,
    TwistedHiggsField,
    check_commutation,
    check_fiber_condition,
    commutator,
    decompose,
    random_valid_instance,
    reconstruct,
)
from .numfield import NumberField, NumberFieldElement
from .poly import (
    BiPoly,
    RationalFunction,
    UniPoly,
    format_bipoly,
    format_unipoly,
    parse_bipoly,
    parse_unipoly,
)
from .projline import (
    LineBundle,
    Section,
    SplitBundle,
    TwistedEndo,
    evaluate_endo,
    h0,
    validate_twisted_endo,
)
from .spectral import (
    CharData,
    SpectralCurve,
    SpectralData,
    SpectralFiberPoint,
    backward_correspondence,
    build_spectral_curve,
    certify_stability,
    char_coefficients,
    commutant_coordinates,
    eigenspace_invariance,
    eigenvalue_condition,
    fiber_points,
    forward_correspondence,
    invariant_line_search,
    is_integral,
)

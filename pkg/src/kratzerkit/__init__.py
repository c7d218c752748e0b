"""kratzerkit: diagnose, correct and solve Kratzer-family diatomic potentials."""

from .errors import (
    DegenerateScreening,
    DomainError,
    KratzerkitError,
    MissingLevel,
    NoBoundStates,
    NoMinimumInBracket,
    NotAMinimum,
    NotApplicable,
    SingularCorrection,
    SpecLoadError,
    Underdetermined,
)
from .potentials import (
    AdditiveTermSpec,
    CorrectionCoefficients,
    PotentialParams,
    PotentialSpec,
    ScreeningSpec,
    asymptote,
    canonical_family,
    constant_screening,
    corrected_potential,
    damped_cosh_screening,
    derivative1,
    derivative2,
    evaluate,
    exponential_screening,
    harmonic_screened_kratzer,
    hulthen_additive,
    hulthen_screened_cosine_kratzer,
    improved_bracket_screening,
    improved_screened_kratzer,
    kratzer,
    screened_cosine_kratzer,
    screened_kratzer,
    shifted_exponential_screening,
    shifted_screened_kratzer,
    spec_from_dict,
    spec_to_dict,
)

__version__ = "0.1.0"

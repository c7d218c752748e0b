"""Exception types shared across the package.

The CLI and the HTTP service map these onto exit codes / status codes, so
callers can distinguish "your input is malformed" from "the numbers say no".
"""


class KratzerkitError(Exception):
    """Base class for all package errors."""


class SpecLoadError(KratzerkitError):
    """A potential spec (JSON file, request body, CLI flags) failed to parse."""


class DomainError(KratzerkitError, ValueError):
    """Inputs are syntactically fine but outside the mathematical domain.

    Covers nonpositive radii, parameter values that violate a family's
    constraints, and operations undefined for the given potential.
    """


class NoMinimumInBracket(KratzerkitError):
    """The derivative has no negative-to-positive sign change in the bracket."""


class NotAMinimum(KratzerkitError):
    """A stationary point was found but its curvature is not positive."""


class NotApplicable(KratzerkitError):
    """The requested closed-form expression does not exist for this family."""


class DegenerateScreening(KratzerkitError):
    """The screening factor vanishes at the reference length; the
    coefficient solve would divide by zero."""


class SingularCorrection(KratzerkitError):
    """The 2x2 coefficient system is singular."""


class NoBoundStates(KratzerkitError):
    """The radial problem supports no bound states on the given grid."""


class MissingLevel(KratzerkitError):
    """A requested (n, l) level is not bound for the given parameters."""


class Underdetermined(KratzerkitError):
    """Fewer data points than free fit parameters."""

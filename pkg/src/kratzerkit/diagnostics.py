"""Quantify how far a potential's claimed (De, re) sit from its actual well.

For the Kratzer potential the parameters De and re really are the well depth
and the minimum position.  Every screened variant breaks that identification:
the derivative at re is nonzero and the depth measured from re falls short of
De.  Both defects have closed-form expressions per family; this module
evaluates them and cross-checks them against the generic numerical path
(root-finding on the analytic first derivative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import potentials as pot
from .errors import (
    DomainError,
    KratzerkitError,
    NoMinimumInBracket,
    NotAMinimum,
    NotApplicable,
)


@dataclass(frozen=True)
class MinimumReport:
    """A located potential minimum.

    r_min: position of the minimum.
    V_min: potential value there.
    curvature: second derivative there, always > 0 for a genuine minimum.
    """

    r_min: float
    V_min: float
    curvature: float

    def __post_init__(self):
        if not self.curvature > 0.0:
            raise NotAMinimum(
                f"curvature {self.curvature} at r = {self.r_min} is not positive"
            )


@dataclass(frozen=True)
class FlawReport:
    """Claimed vs. actual well parameters for one potential.

    ``actual_De`` is None when the potential has no dissociation limit
    (harmonic confinement).  The closed-form fields are None for families
    that satisfy the equilibrium conditions by construction (plain Kratzer,
    corrected forms); ``closed_form_depth`` alone is None for the harmonic
    family, whose slope still has a closed form but whose depth does not
    exist.
    """

    family: str
    claimed_De: float
    claimed_re: float
    actual_re: float
    actual_De: float | None
    slope_at_claimed_re: float
    closed_form_slope: float | None
    closed_form_depth: float | None

    @property
    def is_flawed(self) -> bool:
        """True when (De, re) are not the depth and minimum to ~1e-8."""
        if abs(self.slope_at_claimed_re) > 1e-8 * self.claimed_De / self.claimed_re:
            return True
        if self.actual_De is None:
            return True
        if abs(self.actual_De - self.claimed_De) > 1e-8 * self.claimed_De:
            return True
        return abs(self.actual_re - self.claimed_re) > 1e-8 * self.claimed_re

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "claimed_De": self.claimed_De,
            "claimed_re": self.claimed_re,
            "actual_re": self.actual_re,
            "actual_De": self.actual_De,
            "slope_at_claimed_re": self.slope_at_claimed_re,
            "closed_form_slope": self.closed_form_slope,
            "closed_form_depth": self.closed_form_depth,
            "is_flawed": self.is_flawed,
        }


# geometric scan used when no bracket is supplied
_SCAN_LO = 1e-2
_SCAN_HI = 1e3
_SCAN_RATIO = 1.1


def auto_bracket(spec: pot.PotentialSpec) -> tuple[float, float]:
    """Scan [1e-2*re, 1e3*re] geometrically for the first negative-to-positive
    crossing of dV/dr; that brackets the physical well."""
    re = spec.params.re
    n = int(math.ceil(math.log(_SCAN_HI / _SCAN_LO) / math.log(_SCAN_RATIO))) + 1
    grid = _SCAN_LO * re * _SCAN_RATIO ** np.arange(n)
    d = pot.derivative1(spec, grid)
    for i in range(n - 1):
        if d[i] == 0.0 and pot.derivative2(spec, float(grid[i])) > 0.0:
            return float(grid[i]), float(grid[i])
        if d[i] < 0.0 and d[i + 1] > 0.0:
            return float(grid[i]), float(grid[i + 1])
    raise NoMinimumInBracket(
        f"no minimum of the {spec.family} potential in "
        f"[{_SCAN_LO * re:g}, {_SCAN_HI * re:g}]"
    )


def find_minimum(spec: pot.PotentialSpec,
                 bracket: tuple[float, float] | None = None) -> MinimumReport:
    """Locate the well minimum by bracketed root-finding on dV/dr.

    With ``bracket=None`` the bracket comes from :func:`auto_bracket`.
    The root is resolved to 1e-12 relative in r.  A bracket without a
    negative-to-positive sign change raises NoMinimumInBracket; a stationary
    point with nonpositive curvature raises NotAMinimum.
    """
    if bracket is None:
        a, b = auto_bracket(spec)
    else:
        a, b = float(bracket[0]), float(bracket[1])
        if not (0.0 < a <= b) or not math.isfinite(b):
            raise DomainError("bracket endpoints must be positive, finite, ordered")
    if a == b:
        root = a
    else:
        fa = pot.derivative1(spec, a)
        fb = pot.derivative1(spec, b)
        if fa == 0.0:
            root = a
        elif fb == 0.0:
            root = b
        elif fa < 0.0 < fb:
            root = brentq(lambda r: pot.derivative1(spec, r), a, b,
                          xtol=1e-15 * a, rtol=1e-13)
        else:
            raise NoMinimumInBracket(
                f"dV/dr does not cross negative-to-positive on [{a:g}, {b:g}]"
            )
    curvature = pot.derivative2(spec, root)  # MinimumReport checks its sign
    return MinimumReport(r_min=float(root), V_min=pot.evaluate(spec, root),
                         curvature=float(curvature))


def apparent_dissociation(spec: pot.PotentialSpec,
                          min_report: MinimumReport) -> float | None:
    """Well depth V(inf) - V_min for the given minimum record, or None when
    the potential diverges at infinity (no dissociation limit)."""
    limit = pot.asymptote(spec)
    if math.isinf(limit):
        return None
    return limit - min_report.V_min


def closed_form_flaw(spec: pot.PotentialSpec) -> tuple[float, float | None]:
    """The analytic (slope at re, depth measured from re) pair per family.

    The depth here is V(inf) - V(re) with the *claimed* re, the quantity
    the screened families advertise as De; it is None for the harmonic
    family (no dissociation limit).  Families that genuinely satisfy the
    equilibrium conditions (kratzer, corrected) raise NotApplicable.
    """
    p = spec.params
    De, re, a = p.De, p.re, p.alpha
    fam = spec.family
    if fam == pot.SCREENED_KRATZER:
        return a * De * math.exp(-a * re), De * math.exp(-a * re)
    if fam == pot.SCREENED_COSINE_KRATZER:
        u = a * p.delta * re
        slope = a * De * math.exp(-a * re) * (math.cosh(u)
                                              - p.delta * math.sinh(u))
        return slope, De * math.exp(-a * re) * math.cosh(u)
    if fam == pot.HULTHEN_SCREENED_COSINE_KRATZER:
        ad = a * p.delta
        u = ad * p.lam * re
        e = math.exp(a * re)
        slope = (ad * De * math.exp(-ad * re)
                 * (math.cosh(u) - p.lam * math.sinh(u))
                 + a * p.V0 * e / (1.0 + e) ** 2)
        depth = De * math.exp(-ad * re) * math.cosh(u) + p.V0 / (1.0 + e)
        return slope, depth
    if fam == pot.IMPROVED_SCREENED_KRATZER:
        x = (a + p.delta) * re / 2.0
        slope = (a + p.delta) * De / 2.0 * math.exp(-x) * (math.cosh(x)
                                                           - math.sinh(x))
        return slope, De * (math.exp(-x) * math.cosh(x) + p.tau)
    if fam == pot.SHIFTED_SCREENED_KRATZER:
        slope = a * p.gamma * De * math.exp(-a * re)
        return slope, De * (p.gamma * math.exp(-a * re) + 2.0 * p.lam)
    if fam == pot.HARMONIC_SCREENED_KRATZER:
        return a * De * math.exp(-a * re) + 2.0 * p.c * re, None
    raise NotApplicable(
        f"the {fam} family satisfies the equilibrium conditions; "
        "no flaw expressions exist"
    )


def flaw_report(spec: pot.PotentialSpec) -> FlawReport:
    """Full claimed-vs-actual comparison for one potential spec.

    Combines the auto-bracketed minimum search, the depth measured from the
    actual minimum, the numerical slope at the claimed re and, where they
    exist, the closed-form flaw expressions.  The numeric slope must agree
    with the closed form to 1e-9 relative; a mismatch means an internal
    inconsistency and raises KratzerkitError.
    """
    p = spec.params
    try:
        closed_slope, closed_depth = closed_form_flaw(spec)
    except NotApplicable:
        closed_slope = closed_depth = None
    rep = find_minimum(spec)
    slope = pot.derivative1(spec, p.re)
    if closed_slope is not None:
        diff = abs(slope - closed_slope)
        if diff > 1e-9 * max(abs(slope), abs(closed_slope)):
            raise KratzerkitError(
                f"slope cross-check failed for {spec.family}: numeric {slope!r} "
                f"vs closed form {closed_slope!r}"
            )
    return FlawReport(
        family=spec.family,
        claimed_De=p.De,
        claimed_re=p.re,
        actual_re=rep.r_min,
        actual_De=apparent_dissociation(spec, rep),
        slope_at_claimed_re=slope,
        closed_form_slope=closed_slope,
        closed_form_depth=closed_depth,
    )

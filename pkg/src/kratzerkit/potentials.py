"""Kratzer-family diatomic potentials with exact analytic derivatives.

Every family multiplies the Kratzer core

    K(r) = -2*De*(re/r - re**2/(2*r**2))

by a screening/shift factor and, for two families, adds an extra term
(a Hulthen attraction, a harmonic confinement).  The module evaluates each
family and its first two radial derivatives in closed form, reports the
large-r limit, and (de)serializes specs to plain JSON records.

The whole library is unit-agnostic: energies, lengths and the solver's
kinetic coefficient just have to come from one consistent unit system.
All evaluation functions accept scalars or numpy arrays for ``r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Callable

import numpy as np

from .errors import DomainError, SpecLoadError

# Canonical family tags (also the JSON spelling).
KRATZER = "kratzer"
SCREENED_KRATZER = "screened_kratzer"
SCREENED_COSINE_KRATZER = "screened_cosine_kratzer"
HULTHEN_SCREENED_COSINE_KRATZER = "hulthen_screened_cosine_kratzer"
IMPROVED_SCREENED_KRATZER = "improved_screened_kratzer"
SHIFTED_SCREENED_KRATZER = "shifted_screened_kratzer"
HARMONIC_SCREENED_KRATZER = "harmonic_screened_kratzer"
CORRECTED = "corrected"

FAMILIES = (
    KRATZER,
    SCREENED_KRATZER,
    SCREENED_COSINE_KRATZER,
    HULTHEN_SCREENED_COSINE_KRATZER,
    IMPROVED_SCREENED_KRATZER,
    SHIFTED_SCREENED_KRATZER,
    HARMONIC_SCREENED_KRATZER,
    CORRECTED,
)

_ALIASES = {
    "sk": SCREENED_KRATZER,
    "sck": SCREENED_COSINE_KRATZER,
    "hsck": HULTHEN_SCREENED_COSINE_KRATZER,
    "isk": IMPROVED_SCREENED_KRATZER,
    "ssk": SHIFTED_SCREENED_KRATZER,
    "hsk": HARMONIC_SCREENED_KRATZER,
    "corrected_general": CORRECTED,
}

# Parameters each family reads beyond (De, re).  Anything else must stay at
# its zero default.
_USED_PARAMS = {
    KRATZER: frozenset(),
    SCREENED_KRATZER: frozenset({"alpha"}),
    SCREENED_COSINE_KRATZER: frozenset({"alpha", "delta"}),
    HULTHEN_SCREENED_COSINE_KRATZER: frozenset({"alpha", "delta", "lam", "V0"}),
    IMPROVED_SCREENED_KRATZER: frozenset({"alpha", "delta", "tau"}),
    SHIFTED_SCREENED_KRATZER: frozenset({"alpha", "lam", "gamma"}),
    HARMONIC_SCREENED_KRATZER: frozenset({"alpha", "c"}),
    CORRECTED: frozenset(),
}

# dataclass field name <-> JSON key ("lambda" is reserved in Python)
_JSON_NAMES = {"lam": "lambda"}
_FIELD_NAMES = {v: k for k, v in _JSON_NAMES.items()}


def canonical_family(name: str) -> str:
    """Resolve a family name or alias to its canonical tag."""
    tag = name.strip().lower().replace("-", "_")
    tag = _ALIASES.get(tag, tag)
    if tag not in FAMILIES:
        raise SpecLoadError(f"unknown potential family {name!r}")
    return tag


@dataclass(frozen=True)
class PotentialParams:
    """Parameter record shared by all families.

    De: well-depth parameter (energy, > 0).  Only for the Kratzer and the
        corrected forms is this the actual dissociation energy.
    re: length-scale parameter (> 0); the true equilibrium distance only
        where the family satisfies the stationarity condition.
    alpha: screening rate (1/length, >= 0).
    delta: extra screening parameter; dimensionless multiplier in the
        cosine-screened family, 1/length contribution in the improved one.
    lam: shift/screening weight (serialized as "lambda").
    tau: control switch of the improved family, one of -1, 0, 1.
    gamma: shift weight of the shifted family.
    V0: strength of the Hulthen attraction (energy, >= 0).
    c: harmonic confinement coefficient (energy/length**2, >= 0).
    """

    De: float
    re: float
    alpha: float = 0.0
    delta: float = 0.0
    lam: float = 0.0
    tau: int = 0
    gamma: float = 0.0
    V0: float = 0.0
    c: float = 0.0


@dataclass(frozen=True)
class ScreeningSpec:
    """A multiplicative screening factor f(r).

    ``value`` and ``derivative`` must accept scalars or numpy arrays and be
    finite and bounded on (0, inf); ``asymptote`` is the finite limit of f
    at infinity.  ``form``/``form_params`` name a built-in factor so specs
    using it can round-trip through JSON; ad-hoc callables leave them None.
    """

    value: Callable
    derivative: Callable
    asymptote: float
    form: str | None = None
    form_params: dict | None = None


@dataclass(frozen=True)
class AdditiveTermSpec:
    """An additive term g(r) with g(inf) = 0, used by the general transform."""

    value: Callable
    derivative: Callable
    asymptote: float = 0.0
    form: str | None = None
    form_params: dict | None = None

    def __post_init__(self):
        if self.asymptote != 0.0:
            raise DomainError("additive term must vanish at infinity")


@dataclass(frozen=True)
class CorrectionCoefficients:
    """Coefficients of the 1/r and 1/r**2 terms of a corrected potential."""

    a: float
    b: float


@dataclass(frozen=True)
class PotentialSpec:
    """Tagged union over the potential families.

    Plain families are fully described by ``family`` + ``params``.  The
    ``corrected`` family additionally carries its screening factor, the
    solved coefficients and an optional additive term.
    """

    family: str
    params: PotentialParams
    screening: ScreeningSpec | None = None
    additive: AdditiveTermSpec | None = None
    coefficients: CorrectionCoefficients | None = None

    def __post_init__(self):
        _validate_spec(self)


def _validate_spec(spec: PotentialSpec) -> None:
    if spec.family not in FAMILIES:
        raise SpecLoadError(f"unknown potential family {spec.family!r}")
    p = spec.params
    if not (p.De > 0.0) or not math.isfinite(p.De):
        raise DomainError("De must be positive and finite")
    if not (p.re > 0.0) or not math.isfinite(p.re):
        raise DomainError("re must be positive and finite")

    used = _USED_PARAMS[spec.family]
    for f in fields(p):
        if f.name in ("De", "re") or f.name in used:
            continue
        if getattr(p, f.name) != 0:
            raise DomainError(
                f"family {spec.family!r} does not use parameter {f.name!r}; "
                "leave it at zero"
            )

    if "alpha" in used and p.alpha < 0.0:
        raise DomainError("alpha must be >= 0")
    if spec.family == SCREENED_COSINE_KRATZER and not -1.0 <= p.delta <= 1.0:
        raise DomainError("cosine-screened family needs -1 <= delta <= 1")
    if spec.family == HULTHEN_SCREENED_COSINE_KRATZER:
        if p.delta < 0.0:
            raise DomainError("delta must be >= 0 for the Hulthen-screened family")
        if not -1.0 <= p.lam <= 1.0:
            raise DomainError("lambda must lie in [-1, 1]")
        if p.V0 < 0.0:
            raise DomainError("V0 must be >= 0")
    if spec.family == IMPROVED_SCREENED_KRATZER:
        if p.tau not in (-1, 0, 1):
            raise DomainError("tau must be -1, 0 or 1")
        if p.delta < 0.0:
            raise DomainError("delta must be >= 0 for the improved family")
    if spec.family == HARMONIC_SCREENED_KRATZER and p.c < 0.0:
        raise DomainError("no bound states for c < 0; c must be >= 0")

    if spec.family == CORRECTED:
        if spec.screening is None or spec.coefficients is None:
            raise DomainError(
                "corrected specs need both a screening factor and coefficients"
            )
    else:
        if spec.screening is not None or spec.additive is not None \
                or spec.coefficients is not None:
            raise DomainError(
                f"family {spec.family!r} does not take screening/additive/"
                "coefficient records"
            )


# ---------------------------------------------------------------------------
# convenience constructors

def kratzer(De, re) -> PotentialSpec:
    return PotentialSpec(KRATZER, PotentialParams(De=De, re=re))


def screened_kratzer(De, re, alpha) -> PotentialSpec:
    return PotentialSpec(SCREENED_KRATZER, PotentialParams(De=De, re=re, alpha=alpha))


def screened_cosine_kratzer(De, re, alpha, delta) -> PotentialSpec:
    return PotentialSpec(
        SCREENED_COSINE_KRATZER,
        PotentialParams(De=De, re=re, alpha=alpha, delta=delta),
    )


def hulthen_screened_cosine_kratzer(De, re, alpha, delta, lam, V0) -> PotentialSpec:
    return PotentialSpec(
        HULTHEN_SCREENED_COSINE_KRATZER,
        PotentialParams(De=De, re=re, alpha=alpha, delta=delta, lam=lam, V0=V0),
    )


def improved_screened_kratzer(De, re, alpha, delta, tau) -> PotentialSpec:
    return PotentialSpec(
        IMPROVED_SCREENED_KRATZER,
        PotentialParams(De=De, re=re, alpha=alpha, delta=delta, tau=tau),
    )


def shifted_screened_kratzer(De, re, alpha, lam, gamma) -> PotentialSpec:
    return PotentialSpec(
        SHIFTED_SCREENED_KRATZER,
        PotentialParams(De=De, re=re, alpha=alpha, lam=lam, gamma=gamma),
    )


def harmonic_screened_kratzer(De, re, alpha, c) -> PotentialSpec:
    return PotentialSpec(
        HARMONIC_SCREENED_KRATZER,
        PotentialParams(De=De, re=re, alpha=alpha, c=c),
    )


def corrected_potential(De, re, screening, coefficients,
                        additive=None) -> PotentialSpec:
    return PotentialSpec(
        CORRECTED,
        PotentialParams(De=De, re=re),
        screening=screening,
        additive=additive,
        coefficients=coefficients,
    )


# ---------------------------------------------------------------------------
# built-in screening factors and additive terms

def exponential_screening(alpha) -> ScreeningSpec:
    """f(r) = exp(-alpha*r)."""
    if alpha < 0.0:
        raise DomainError("alpha must be >= 0")
    return ScreeningSpec(
        value=lambda r: np.exp(-alpha * r),
        derivative=lambda r: -alpha * np.exp(-alpha * r),
        asymptote=1.0 if alpha == 0.0 else 0.0,
        form="exponential",
        form_params={"alpha": float(alpha)},
    )


def damped_cosh_screening(rate, ratio) -> ScreeningSpec:
    """f(r) = exp(-rate*r) * cosh(ratio*rate*r), with |ratio| <= 1."""
    if rate < 0.0:
        raise DomainError("rate must be >= 0")
    if not -1.0 <= ratio <= 1.0:
        raise DomainError("ratio must lie in [-1, 1] so f stays bounded")
    if rate == 0.0:
        asym = 1.0
    elif abs(ratio) == 1.0:
        asym = 0.5
    else:
        asym = 0.0
    return ScreeningSpec(
        value=lambda r: _damped_cosh(rate, ratio, np.asarray(r, dtype=float), 0),
        derivative=lambda r: _damped_cosh(rate, ratio, np.asarray(r, dtype=float), 1),
        asymptote=asym,
        form="damped_cosh",
        form_params={"rate": float(rate), "ratio": float(ratio)},
    )


def improved_bracket_screening(alpha, delta, tau) -> ScreeningSpec:
    """The improved family's bracket, f(r) = exp(-(alpha+delta)*r)/2 + tau + 1/2.

    Bounded but generally nonvanishing at infinity (limit tau + 1/2), which
    the general transform tolerates.
    """
    if alpha < 0.0 or delta < 0.0:
        raise DomainError("alpha and delta must be >= 0")
    if tau not in (-1, 0, 1):
        raise DomainError("tau must be -1, 0 or 1")
    s = alpha + delta
    asym = tau + 1.0 if s == 0.0 else tau + 0.5
    return ScreeningSpec(
        value=lambda r: 0.5 * np.exp(-s * r) + tau + 0.5,
        derivative=lambda r: -0.5 * s * np.exp(-s * r),
        asymptote=asym,
        form="improved_bracket",
        form_params={"alpha": float(alpha), "delta": float(delta), "tau": int(tau)},
    )


def shifted_exponential_screening(alpha, gamma, lam) -> ScreeningSpec:
    """The shifted family's factor, f(r) = 2*lam + gamma*exp(-alpha*r)."""
    if alpha < 0.0:
        raise DomainError("alpha must be >= 0")
    asym = 2.0 * lam + (gamma if alpha == 0.0 else 0.0)
    return ScreeningSpec(
        value=lambda r: 2.0 * lam + gamma * np.exp(-alpha * r),
        derivative=lambda r: -alpha * gamma * np.exp(-alpha * r),
        asymptote=asym,
        form="shifted_exponential",
        form_params={"alpha": float(alpha), "gamma": float(gamma), "lam": float(lam)},
    )


def constant_screening(value=1.0) -> ScreeningSpec:
    """f(r) = value; turns the general transform into the bare Kratzer form."""
    return ScreeningSpec(
        value=lambda r: np.full_like(np.asarray(r, dtype=float), float(value)),
        derivative=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
        asymptote=float(value),
        form="constant",
        form_params={"value": float(value)},
    )


def hulthen_additive(V0, alpha) -> AdditiveTermSpec:
    """g(r) = -V0*exp(-alpha*r)/(1 + exp(-alpha*r)), vanishing at infinity."""
    if V0 < 0.0:
        raise DomainError("V0 must be >= 0")
    if alpha <= 0.0:
        raise DomainError("the Hulthen term needs alpha > 0 to vanish at infinity")
    return AdditiveTermSpec(
        value=lambda r: -V0 * np.exp(-alpha * r) / (1.0 + np.exp(-alpha * r)),
        derivative=lambda r: V0 * alpha * np.exp(-alpha * r)
        / (1.0 + np.exp(-alpha * r)) ** 2,
        asymptote=0.0,
        form="hulthen",
        form_params={"V0": float(V0), "alpha": float(alpha)},
    )


_SCREENING_FORMS = {
    "exponential": exponential_screening,
    "damped_cosh": damped_cosh_screening,
    "improved_bracket": improved_bracket_screening,
    "shifted_exponential": shifted_exponential_screening,
    "constant": constant_screening,
}

_ADDITIVE_FORMS = {
    "hulthen": hulthen_additive,
}


# ---------------------------------------------------------------------------
# evaluation

def _radii(r):
    arr = np.asarray(r, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError("r must be positive and finite")
    return arr, arr.ndim == 0


def _core(De, re, r):
    return -2.0 * De * (re / r - re * re / (2.0 * r * r))


def _core_d1(De, re, r):
    return 2.0 * De * re / r**2 - 2.0 * De * re**2 / r**3


def _core_d2(De, re, r):
    return -4.0 * De * re / r**3 + 6.0 * De * re**2 / r**4


def _damped_cosh(rate, ratio, r, order: int):
    """exp(-rate*r)*cosh(ratio*rate*r) as a sum of two decaying exponentials.

    The split form (exp(-p*r) + exp(-q*r))/2 with p = rate*(1-ratio),
    q = rate*(1+ratio) never overflows, unlike the literal product.
    """
    p = rate * (1.0 - ratio)
    q = rate * (1.0 + ratio)
    ep = np.exp(-p * r)
    eq = np.exp(-q * r)
    if order == 0:
        return 0.5 * (ep + eq)
    if order == 1:
        return -0.5 * (p * ep + q * eq)
    return 0.5 * (p * p * ep + q * q * eq)


def _factor(spec: PotentialSpec, r, order: int):
    """Screening factor of a plain family and its first two derivatives."""
    p = spec.params
    fam = spec.family
    if fam == KRATZER:
        one = np.ones_like(r)
        return one if order == 0 else 0.0 * one
    if fam in (SCREENED_KRATZER, HARMONIC_SCREENED_KRATZER):
        e = np.exp(-p.alpha * r)
        if order == 0:
            return e
        if order == 1:
            return -p.alpha * e
        return p.alpha**2 * e
    if fam == SCREENED_COSINE_KRATZER:
        return _damped_cosh(p.alpha, p.delta, r, order)
    if fam == HULTHEN_SCREENED_COSINE_KRATZER:
        return _damped_cosh(p.delta * p.alpha, p.lam, r, order)
    if fam == IMPROVED_SCREENED_KRATZER:
        s = p.alpha + p.delta
        e = np.exp(-s * r)
        if order == 0:
            return 0.5 * e + p.tau + 0.5
        if order == 1:
            return -0.5 * s * e
        return 0.5 * s**2 * e
    if fam == SHIFTED_SCREENED_KRATZER:
        e = np.exp(-p.alpha * r)
        if order == 0:
            return 2.0 * p.lam + p.gamma * e
        if order == 1:
            return -p.alpha * p.gamma * e
        return p.alpha**2 * p.gamma * e
    raise AssertionError(fam)


def _hulthen(V0, alpha, r, order: int):
    e = np.exp(-alpha * r)
    if order == 0:
        return -V0 * e / (1.0 + e)
    if order == 1:
        return V0 * alpha * e / (1.0 + e) ** 2
    # second derivative: V0*alpha**2 * (e**2 - e) / (1 + e)**3
    return V0 * alpha**2 * (e * e - e) / (1.0 + e) ** 3


_FD_STEP = 1e-5  # relative step for the lone finite-difference fallback


def _corrected_terms(spec: PotentialSpec, r, order: int):
    """Value/derivatives of (a/r + b/r**2) f(r) [+ g(r)] for corrected specs.

    The screening record carries only f and f'; the second derivative falls
    back to a central difference of the analytic first derivative, which is
    far more accurate than the library-wide consistency tolerance.
    """
    a, b = spec.coefficients.a, spec.coefficients.b
    f = spec.screening.value
    f1 = spec.screening.derivative
    core = a / r + b / r**2
    core1 = -a / r**2 - 2.0 * b / r**3
    if order == 0:
        out = core * f(r)
        if spec.additive is not None:
            out = out + spec.additive.value(r)
        return out
    if order == 1:
        out = core1 * f(r) + core * f1(r)
        if spec.additive is not None:
            out = out + spec.additive.derivative(r)
        return out
    core2 = 2.0 * a / r**3 + 6.0 * b / r**4
    h = _FD_STEP * r
    f2 = (f1(r + h) - f1(r - h)) / (2.0 * h)
    out = core2 * f(r) + 2.0 * core1 * f1(r) + core * f2
    if spec.additive is not None:
        g1 = spec.additive.derivative
        out = out + (g1(r + h) - g1(r - h)) / (2.0 * h)
    return out


def evaluate(spec: PotentialSpec, r):
    """Potential energy at radius ``r`` (scalar or array), exact per family."""
    arr, scalar = _radii(r)
    p = spec.params
    if spec.family == CORRECTED:
        v = _corrected_terms(spec, arr, 0)
    else:
        v = _core(p.De, p.re, arr) * _factor(spec, arr, 0)
        if spec.family == HULTHEN_SCREENED_COSINE_KRATZER:
            v = v + _hulthen(p.V0, p.alpha, arr, 0)
        elif spec.family == HARMONIC_SCREENED_KRATZER:
            v = v + p.c * arr**2
    return float(v) if scalar else v


def derivative1(spec: PotentialSpec, r):
    """First radial derivative dV/dr."""
    arr, scalar = _radii(r)
    p = spec.params
    if spec.family == CORRECTED:
        v = _corrected_terms(spec, arr, 1)
    else:
        v = (_core_d1(p.De, p.re, arr) * _factor(spec, arr, 0)
             + _core(p.De, p.re, arr) * _factor(spec, arr, 1))
        if spec.family == HULTHEN_SCREENED_COSINE_KRATZER:
            v = v + _hulthen(p.V0, p.alpha, arr, 1)
        elif spec.family == HARMONIC_SCREENED_KRATZER:
            v = v + 2.0 * p.c * arr
    return float(v) if scalar else v


def derivative2(spec: PotentialSpec, r):
    """Second radial derivative d2V/dr2."""
    arr, scalar = _radii(r)
    p = spec.params
    if spec.family == CORRECTED:
        v = _corrected_terms(spec, arr, 2)
    else:
        v = (_core_d2(p.De, p.re, arr) * _factor(spec, arr, 0)
             + 2.0 * _core_d1(p.De, p.re, arr) * _factor(spec, arr, 1)
             + _core(p.De, p.re, arr) * _factor(spec, arr, 2))
        if spec.family == HULTHEN_SCREENED_COSINE_KRATZER:
            v = v + _hulthen(p.V0, p.alpha, arr, 2)
        elif spec.family == HARMONIC_SCREENED_KRATZER:
            v = v + 2.0 * p.c
    return float(v) if scalar else v


def asymptote(spec: PotentialSpec) -> float:
    """Limit of V at infinite separation; ``math.inf`` under harmonic
    confinement (c > 0), where no dissociation limit exists."""
    if spec.family == HARMONIC_SCREENED_KRATZER and spec.params.c > 0.0:
        return math.inf
    # (a/r + b/r**2) times any bounded factor vanishes; additive terms are
    # required to vanish by construction.
    return 0.0


# ---------------------------------------------------------------------------
# serialization

def _params_to_dict(spec: PotentialSpec) -> dict:
    p = spec.params
    out = {"De": p.De, "re": p.re}
    for name in sorted(_USED_PARAMS[spec.family]):
        key = _JSON_NAMES.get(name, name)
        out[key] = getattr(p, name)
    return out


def spec_to_dict(spec: PotentialSpec) -> dict:
    """Plain-JSON form of a spec: {"family": ..., "params": {...}} plus the
    screening/additive/coefficient records for corrected specs."""
    out = {"family": spec.family, "params": _params_to_dict(spec)}
    if spec.family == CORRECTED:
        scr = spec.screening
        if scr.form is None:
            raise SpecLoadError(
                "corrected spec uses an ad-hoc screening callable and cannot "
                "be serialized"
            )
        out["screening"] = {"form": scr.form, "params": dict(scr.form_params)}
        if spec.additive is not None:
            add = spec.additive
            if add.form is None:
                raise SpecLoadError(
                    "corrected spec uses an ad-hoc additive callable and "
                    "cannot be serialized"
                )
            out["additive"] = {"form": add.form, "params": dict(add.form_params)}
        out["coefficients"] = {"a": spec.coefficients.a, "b": spec.coefficients.b}
    return out


def _params_from_dict(d: dict) -> PotentialParams:
    known = {f.name for f in fields(PotentialParams)}
    kwargs = {}
    for key, value in d.items():
        name = _FIELD_NAMES.get(key, key)
        if name not in known:
            raise SpecLoadError(f"unknown parameter name {key!r}")
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise SpecLoadError(f"parameter {key!r} must be a number")
        kwargs[name] = int(value) if name == "tau" else float(value)
    for required in ("De", "re"):
        if required not in kwargs:
            raise SpecLoadError(f"missing required parameter {required!r}")
    return PotentialParams(**kwargs)


def screening_from_dict(d: dict) -> ScreeningSpec:
    try:
        factory = _SCREENING_FORMS[d["form"]]
    except KeyError as exc:
        raise SpecLoadError(f"unknown screening form {d.get('form')!r}") from exc
    try:
        return factory(**d.get("params", {}))
    except TypeError as exc:
        raise SpecLoadError(f"bad screening parameters: {exc}") from exc


def additive_from_dict(d: dict) -> AdditiveTermSpec:
    try:
        factory = _ADDITIVE_FORMS[d["form"]]
    except KeyError as exc:
        raise SpecLoadError(f"unknown additive form {d.get('form')!r}") from exc
    try:
        return factory(**d.get("params", {}))
    except TypeError as exc:
        raise SpecLoadError(f"bad additive parameters: {exc}") from exc


def spec_from_dict(d: dict) -> PotentialSpec:
    if not isinstance(d, dict):
        raise SpecLoadError("potential spec must be a JSON object")
    unknown = set(d) - {"family", "params", "screening", "additive", "coefficients"}
    if unknown:
        raise SpecLoadError(f"unknown spec fields: {sorted(unknown)}")
    if "family" not in d or "params" not in d:
        raise SpecLoadError("potential spec needs 'family' and 'params'")
    family = canonical_family(str(d["family"]))
    params = _params_from_dict(d["params"])
    # a JSON null section counts as absent
    if family != CORRECTED:
        if any(d.get(k) is not None
               for k in ("screening", "additive", "coefficients")):
            raise SpecLoadError(
                "screening/additive/coefficients only apply to corrected specs"
            )
        return PotentialSpec(family, params)
    if d.get("screening") is None or d.get("coefficients") is None:
        raise SpecLoadError("corrected specs need 'screening' and 'coefficients'")
    screening = screening_from_dict(d["screening"])
    additive = (additive_from_dict(d["additive"])
                if d.get("additive") is not None else None)
    coeff = d["coefficients"]
    if not isinstance(coeff, dict) or set(coeff) != {"a", "b"}:
        raise SpecLoadError("'coefficients' must be an object with keys a, b")
    return PotentialSpec(
        family,
        params,
        screening=screening,
        additive=additive,
        coefficients=CorrectionCoefficients(float(coeff["a"]), float(coeff["b"])),
    )

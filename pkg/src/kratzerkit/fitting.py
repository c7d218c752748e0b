"""Least-squares fitting of model eigenvalues to a reference spectrum.

A spectrum is a list of (n, l, energy) rows with optional positive weights.
``residuals`` solves the radial problem once per l channel and returns the
weighted differences E_model - E_obs; ``fit`` minimizes their square sum
over a chosen subset of potential parameters with a finite-difference
trust-region optimizer.  The reported ``square_deviation`` is the weighted
sum of squared residuals at the solution.

Fits address a family by tag.  The seven closed families fit their own
functional form; the tag ``corrected`` (equivalently
``corrected_screened_kratzer`` or ``csk``) rebuilds the exponentially
screened potential with regenerated well coefficients at every trial point,
so (De, re) keep their advertised meaning during the fit.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import least_squares

from . import potentials as pot
from .correction import corrected_screened_kratzer
from .errors import (
    DomainError,
    KratzerkitError,
    MissingLevel,
    NoBoundStates,
    SpecLoadError,
    Underdetermined,
)
from .solver import RadialGrid, RadialProblem, solve_bound_states

CORRECTED_SCREENED_KRATZER = "corrected_screened_kratzer"

_FIT_ALIASES = {
    "corrected": CORRECTED_SCREENED_KRATZER,
    "csk": CORRECTED_SCREENED_KRATZER,
    CORRECTED_SCREENED_KRATZER: CORRECTED_SCREENED_KRATZER,
}

_BUILDERS = {
    pot.KRATZER:
        lambda p: pot.kratzer(p.De, p.re),
    pot.SCREENED_KRATZER:
        lambda p: pot.screened_kratzer(p.De, p.re, p.alpha),
    pot.SCREENED_COSINE_KRATZER:
        lambda p: pot.screened_cosine_kratzer(p.De, p.re, p.alpha, p.delta),
    pot.HULTHEN_SCREENED_COSINE_KRATZER:
        lambda p: pot.hulthen_screened_cosine_kratzer(
            p.De, p.re, p.alpha, p.delta, p.lam, p.V0),
    pot.IMPROVED_SCREENED_KRATZER:
        lambda p: pot.improved_screened_kratzer(
            p.De, p.re, p.alpha, p.delta, p.tau),
    pot.SHIFTED_SCREENED_KRATZER:
        lambda p: pot.shifted_screened_kratzer(
            p.De, p.re, p.alpha, p.lam, p.gamma),
    pot.HARMONIC_SCREENED_KRATZER:
        lambda p: pot.harmonic_screened_kratzer(p.De, p.re, p.alpha, p.c),
    CORRECTED_SCREENED_KRATZER:
        lambda p: corrected_screened_kratzer(p.De, p.re, p.alpha),
}

# Continuous parameters eligible for fitting, per family.  tau is a discrete
# switch and never fittable.
_FITTABLE = {
    pot.KRATZER: frozenset({"De", "re"}),
    pot.SCREENED_KRATZER: frozenset({"De", "re", "alpha"}),
    pot.SCREENED_COSINE_KRATZER: frozenset({"De", "re", "alpha", "delta"}),
    pot.HULTHEN_SCREENED_COSINE_KRATZER:
        frozenset({"De", "re", "alpha", "delta", "lam", "V0"}),
    pot.IMPROVED_SCREENED_KRATZER: frozenset({"De", "re", "alpha", "delta"}),
    pot.SHIFTED_SCREENED_KRATZER:
        frozenset({"De", "re", "alpha", "lam", "gamma"}),
    pot.HARMONIC_SCREENED_KRATZER: frozenset({"De", "re", "alpha", "c"}),
    CORRECTED_SCREENED_KRATZER: frozenset({"De", "re", "alpha"}),
}

# Lower bounds handed to the optimizer where a sign constraint is hard.
_LOWER_BOUNDS = {"De": 1e-8, "re": 1e-8, "alpha": 0.0, "V0": 0.0, "c": 0.0}

_PENALTY = 1e8


def fit_family(name: str) -> str:
    """Resolve a fit-family tag, including the corrected aliases."""
    tag = name.strip().lower().replace("-", "_")
    if tag in _FIT_ALIASES:
        return _FIT_ALIASES[tag]
    tag = pot.canonical_family(tag)
    if tag == pot.CORRECTED:
        raise DomainError(
            "specs with explicit correction coefficients are not fittable; "
            "use the 'corrected' fit family, which regenerates them"
        )
    return tag


@dataclass(frozen=True)
class SpectrumData:
    """Reference spectrum: (n, l, energy) rows plus positive weights."""

    entries: tuple
    weights: tuple

    def __init__(self, entries, weights=None):
        rows = []
        for n, l, energy in entries:
            if n != int(n) or l != int(l):
                raise DomainError("n and l must be integers")
            n, l = int(n), int(l)
            if n < 0 or l < 0:
                raise DomainError("n and l must be non-negative")
            energy = float(energy)
            if not math.isfinite(energy):
                raise DomainError("spectrum energies must be finite")
            rows.append((n, l, energy))
        if not rows:
            raise DomainError("spectrum must contain at least one entry")
        keys = {(n, l) for n, l, _ in rows}
        if len(keys) != len(rows):
            raise DomainError("duplicate (n, l) entry in spectrum")
        if weights is None:
            wts = (1.0,) * len(rows)
        else:
            wts = tuple(float(w) for w in weights)
            if len(wts) != len(rows):
                raise DomainError("need one weight per spectrum entry")
            if any(not math.isfinite(w) or w <= 0.0 for w in wts):
                raise DomainError("weights must be positive and finite")
        object.__setattr__(self, "entries", tuple(rows))
        object.__setattr__(self, "weights", wts)

    def __len__(self):
        return len(self.entries)

    @classmethod
    def from_csv(cls, source) -> "SpectrumData":
        """Load a spectrum from CSV columns n, l, energy[, weight].

        ``source`` is a path or an open text stream.  A non-numeric first
        row is treated as a header and skipped.
        """
        if hasattr(source, "read"):
            return cls._parse(source)
        with open(source, "r", newline="") as fh:
            return cls._parse(fh)

    @classmethod
    def _parse(cls, stream) -> "SpectrumData":
        entries = []
        weights = []
        saw_weight = False
        for i, row in enumerate(csv.reader(stream)):
            cells = [c.strip() for c in row if c.strip() != ""]
            if not cells:
                continue
            try:
                values = [float(c) for c in cells]
            except ValueError:
                if i == 0:
                    continue  # header line
                raise SpecLoadError(f"non-numeric spectrum row: {row!r}")
            if len(values) not in (3, 4):
                raise SpecLoadError(
                    "spectrum rows need columns n, l, energy[, weight]"
                )
            entries.append((values[0], values[1], values[2]))
            if len(values) == 4:
                saw_weight = True
                weights.append(values[3])
            else:
                weights.append(1.0)
        if not entries:
            raise SpecLoadError("spectrum file contains no data rows")
        try:
            return cls(entries, weights if saw_weight else None)
        except DomainError as exc:
            raise SpecLoadError(str(exc)) from exc


@dataclass(frozen=True)
class FitResult:
    family: str
    params: pot.PotentialParams
    square_deviation: float
    iterations: int
    converged: bool

    def to_dict(self) -> dict:
        used = {"De", "re"}
        used |= _FITTABLE[self.family]
        if self.family == pot.IMPROVED_SCREENED_KRATZER:
            used.add("tau")
        record = {}
        for name in sorted(used):
            key = pot._JSON_NAMES.get(name, name)
            record[key] = getattr(self.params, name)
        return {
            "family": self.family,
            "params": record,
            "square_deviation": self.square_deviation,
            "iterations": self.iterations,
            "converged": self.converged,
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _build_spec(family: str, params: pot.PotentialParams) -> pot.PotentialSpec:
    return _BUILDERS[family](params)


def residuals(family, params, data, kinetic_coefficient,
              grid: RadialGrid | None = None) -> np.ndarray:
    """Weighted residuals sqrt(w) * (E_model - E_obs), in data order.

    Raises MissingLevel when the potential at these parameters does not
    bind one of the requested (n, l) levels.
    """
    family = fit_family(family)
    spec = _build_spec(family, params)
    by_l: dict[int, list[int]] = {}
    for idx, (n, l, _) in enumerate(data.entries):
        by_l.setdefault(l, []).append(idx)

    model = np.empty(len(data))
    for l, indices in by_l.items():
        n_top = max(data.entries[i][0] for i in indices)
        problem = RadialProblem(spec, l, kinetic_coefficient)
        try:
            states = solve_bound_states(problem, grid, n_max=n_top)
        except NoBoundStates:
            raise MissingLevel(
                f"no bound states at l={l} for these parameters"
            )
        for i in indices:
            n = data.entries[i][0]
            if n >= len(states):
                raise MissingLevel(
                    f"level (n={n}, l={l}) is not bound for these parameters"
                )
            model[i] = states[n].energy

    obs = np.array([e for _, _, e in data.entries])
    w = np.sqrt(np.array(data.weights))
    return w * (model - obs)


def fit(family, data, initial, free_mask, kinetic_coefficient,
        grid: RadialGrid | None = None, max_evaluations=400) -> FitResult:
    """Least-squares fit of the named parameters to a spectrum.

    ``free_mask`` is an iterable of parameter names to vary; the rest stay
    at their ``initial`` values.  Infeasible trial points (lost levels,
    invalid parameters) are rejected through a large constant penalty, so
    the optimizer backs away instead of aborting.
    """
    family = fit_family(family)
    free = sorted(set(free_mask))
    if not free:
        raise DomainError("free_mask must name at least one parameter")
    fittable = _FITTABLE[family]
    for name in free:
        if name not in fittable:
            raise DomainError(
                f"parameter {name!r} is not fittable for family {family!r}"
            )
    if len(data) < len(free):
        raise Underdetermined(
            f"{len(data)} data points cannot determine {len(free)} parameters"
        )

    def with_values(x) -> pot.PotentialParams:
        return replace(initial, **{name: float(v) for name, v in zip(free, x)})

    # Fail loudly if the starting point itself is infeasible.
    residuals(family, initial, data, kinetic_coefficient, grid)

    m = len(data)

    def objective(x):
        try:
            return residuals(family, with_values(x), data,
                             kinetic_coefficient, grid)
        except KratzerkitError:
            return np.full(m, _PENALTY)  # rejected step

    x0 = np.array([getattr(initial, name) for name in free], dtype=float)
    lower = np.array([_LOWER_BOUNDS.get(name, -np.inf) for name in free])
    res = least_squares(
        objective, x0,
        bounds=(lower, np.full(len(free), np.inf)),
        method="trf",
        diff_step=1e-6,
        xtol=1e-10, gtol=1e-10, ftol=None,
        max_nfev=max_evaluations,
    )
    return FitResult(
        family=family,
        params=with_values(res.x),
        square_deviation=float(np.dot(res.fun, res.fun)),
        iterations=int(res.nfev),
        converged=bool(res.status > 0),
    )


def spectrum_from_states(states_by_l, weights=None) -> SpectrumData:
    """Assemble SpectrumData from {l: BoundStateList} solver output."""
    entries = []
    for l in sorted(states_by_l):
        for st in states_by_l[l]:
            entries.append((st.n, l, st.energy))
    return SpectrumData(entries, weights)

"""Vibrational-rotational bound states for any potential spec.

The radial equation solved here is

    -k u''(r) + [V(r) + l(l+1) k / r**2] u(r) = E u(r),   k = hbar**2 / (2 mu)

with Dirichlet conditions at both grid ends.  ``k`` (the kinetic
coefficient) carries the mass/unit convention and is always explicit.

Two independent discretizations are provided on purpose:

* :func:`solve_bound_states` - Numerov sweeps with node-count bisection.
  The node count of the outward solution equals the number of eigenvalues
  below the trial energy, so plain bisection brackets each level without
  ever missing or double-counting one.
* :func:`diagonalize_oracle` - dense second-order finite-difference
  diagonalization (symmetric tridiagonal).  Slower converging but entirely
  different machinery, kept as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from . import _numerov
from . import potentials as pot
from .errors import DomainError, KratzerkitError, NoBoundStates

_BISECT_RTOL = 1e-10
_MAX_BISECT = 240


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial grid; spacing h = (r_max - r_min)/(n_points - 1)."""

    r_min: float
    r_max: float
    n_points: int

    def __post_init__(self):
        if not (0.0 < self.r_min < self.r_max) or not math.isfinite(self.r_max):
            raise DomainError("grid needs 0 < r_min < r_max, both finite")
        if self.n_points < 200:
            raise DomainError("grid needs at least 200 points")

    @property
    def spacing(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points - 1)

    def radii(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n_points)


def default_grid(re: float, n_points: int = 4000) -> RadialGrid:
    """[1e-3*re, 50*re]: inside any core wavefunction, past any screened tail."""
    return RadialGrid(1e-3 * re, 50.0 * re, n_points)


@dataclass(frozen=True)
class RadialProblem:
    """One (potential, l) channel with its kinetic coefficient."""

    potential: pot.PotentialSpec
    l: int
    kinetic_coefficient: float

    def __post_init__(self):
        if self.l < 0 or self.l != int(self.l):
            raise DomainError("l must be a nonnegative integer")
        if not (self.kinetic_coefficient > 0.0) \
                or not math.isfinite(self.kinetic_coefficient):
            raise DomainError("kinetic_coefficient must be positive and finite")


@dataclass(frozen=True, eq=False)
class BoundState:
    """One bound level: energy plus the normalized radial function u(r).

    ``wavefunction`` is sampled on the solve grid, has exactly n interior
    nodes and unit trapezoidal norm.
    """

    n: int
    l: int
    energy: float
    wavefunction: np.ndarray


class BoundStateList(list):
    """List of BoundState; ``truncated`` is set when the well holds fewer
    levels than were requested."""

    truncated: bool = False


def effective_potential(problem: RadialProblem, r):
    """V(r) plus the centrifugal term l(l+1)*k/r**2."""
    arr = np.asarray(r, dtype=float)
    v = pot.evaluate(problem.potential, arr)
    if problem.l > 0:
        v = v + problem.l * (problem.l + 1) * problem.kinetic_coefficient / arr**2
    return float(v) if arr.ndim == 0 else v


def _setup(problem: RadialProblem, grid: RadialGrid):
    r = grid.radii()
    veff = effective_potential(problem, r)
    limit = pot.asymptote(problem.potential)
    # centrifugal repulsion vanishes at infinity, so the continuum threshold
    # is the potential's own asymptote; under confinement every state is
    # bound and the top of the representable spectrum is V_eff at the wall
    threshold = veff[-1] if math.isinf(limit) else limit
    vmin = float(veff.min())
    if not vmin < threshold:
        raise NoBoundStates(
            f"effective potential for l={problem.l} has no well below the "
            "continuum threshold"
        )
    return r, veff, vmin, float(threshold)


def _start_index(veff, vmin, k, h):
    # Numerov mass factor must stay positive for monotone node counts;
    # start where h^2 (V_eff - E)/(12 k) <= 1/2 for every E >= vmin
    t = h * h * (veff - vmin) / (12.0 * k)
    idx = np.nonzero(t <= 0.5)[0]
    if idx.size == 0 or idx[0] > veff.shape[0] - 10:
        raise DomainError("grid too coarse for the core singularity")
    return int(idx[0])


def _bisect_level(veff, n, lo, hi, k, h, i0):
    # invariant: count(lo) <= n < count(hi)
    span = hi - lo
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        if _numerov.count_nodes(veff, mid, k, h, i0) <= n:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _BISECT_RTOL * max(abs(lo), abs(hi), 1e-6 * span):
            break
    return 0.5 * (lo + hi)


def _assemble_state(veff, energy, k, h, i0):
    n_pts = veff.shape[0]
    # outermost classical turning point; clamp into the integrable range
    inside = np.nonzero(veff <= energy)[0]
    m = int(inside[-1]) if inside.size else i0 + 2
    m = min(max(m, i0 + 2), n_pts - 3)
    u = np.zeros(n_pts)
    v = np.zeros(n_pts)
    _numerov.outward(veff, energy, k, h, i0, m, u)
    _numerov.inward(veff, energy, k, h, m, v)
    if v[m] == 0.0:
        raise KratzerkitError("inward sweep vanished at the matching point")
    u[m:] = v[m:] * (u[m] / v[m])
    u /= math.sqrt(h * float(np.dot(u, u)))
    return u


def _interior_nodes(u) -> int:
    s = np.sign(u[1:-1])
    s = s[s != 0.0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def solve_bound_states(problem: RadialProblem, grid: RadialGrid | None = None,
                       n_max: int = 10) -> BoundStateList:
    """Levels n = 0..n_max for one l channel, by Numerov bisection.

    Energies are resolved to 1e-10 relative.  If the well holds fewer than
    n_max + 1 levels the list comes back shorter with ``truncated`` set.
    Wavefunctions are assembled by gluing outward and inward sweeps at the
    outermost classical turning point and carry unit trapezoidal norm.
    """
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if grid is None:
        grid = default_grid(problem.potential.params.re)
    r, veff, vmin, threshold = _setup(problem, grid)
    h = grid.spacing
    k = problem.kinetic_coefficient
    i0 = _start_index(veff, vmin, k, h)

    top = threshold - 1e-12 * (threshold - vmin)
    capacity = int(_numerov.count_nodes(veff, top, k, h, i0))
    if capacity == 0:
        raise NoBoundStates(
            f"no level below the continuum threshold for l={problem.l} "
            "on this grid"
        )

    states = BoundStateList()
    states.truncated = capacity < n_max + 1
    for n in range(min(n_max + 1, capacity)):
        energy = _bisect_level(veff, n, vmin, top, k, h, i0)
        u = _assemble_state(veff, energy, k, h, i0)
        nodes = _interior_nodes(u)
        if nodes != n:
            raise KratzerkitError(
                f"assembled state for n={n}, l={problem.l} shows {nodes} nodes"
            )
        states.append(BoundState(n=n, l=problem.l, energy=float(energy),
                                 wavefunction=u))
    return states


def diagonalize_oracle(problem: RadialProblem, grid: RadialGrid | None = None,
                       max_levels: int | None = None,
                       richardson: bool = False) -> np.ndarray:
    """Eigenvalues below threshold from a dense finite-difference matrix.

    Plain second-order discretization of the same radial operator on the
    same grid family, diagonalized as a symmetric tridiagonal matrix.  Its
    O(h**2) error converges slower than the Numerov sweeps, so oracle grids
    usually need more points for the same accuracy; that independence is
    the point.

    ``richardson=True`` repeats the diagonalization with the spacing halved
    and extrapolates the h**2 term away.  Shrinking h directly stops paying
    off once the eigensolver's absolute accuracy floor (which grows as the
    matrix norm, so as 1/h**2) overtakes the discretization error; for
    near-threshold levels the extrapolated coarse pair stays well below
    that floor.
    """
    if grid is None:
        grid = default_grid(problem.potential.params.re)
    if richardson:
        coarse = diagonalize_oracle(problem, grid, max_levels)
        fine_grid = RadialGrid(grid.r_min, grid.r_max,
                               2 * grid.n_points - 1)
        fine = diagonalize_oracle(problem, fine_grid, max_levels)
        m = min(coarse.shape[0], fine.shape[0])
        return fine[:m] + (fine[:m] - coarse[:m]) / 3.0
    r, veff, vmin, threshold = _setup(problem, grid)
    h = grid.spacing
    k = problem.kinetic_coefficient
    diag = 2.0 * k / h**2 + veff[1:-1]
    off = np.full(diag.shape[0] - 1, -k / h**2)
    span = threshold - vmin
    vals = eigvalsh_tridiagonal(
        diag, off, select="v",
        select_range=(vmin - 1e-9 * abs(span), threshold),
    )
    vals = np.sort(vals)
    if max_levels is not None:
        vals = vals[:max_levels]
    return vals

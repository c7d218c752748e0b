"""Service handlers: one function per endpoint, shared with the CLI.

Each handler takes a request model and returns a response model; library
errors propagate to the caller (the HTTP layer maps them to status codes,
the CLI maps them to exit codes).
"""

from __future__ import annotations

import numpy as np

from .. import __version__
from .. import potentials as pot
from ..config import RunConfig, config_from_dict
from ..correction import correct_spec, validate_correction
from ..diagnostics import flaw_report
from ..errors import DomainError
from ..fitting import SpectrumData, fit, fit_family
from ..solver import RadialProblem, solve_bound_states
from . import schemas as sch


def _spec(record: sch.SpecRecord) -> pot.PotentialSpec:
    return pot.spec_from_dict(record.as_record())


def _config(record: sch.ConfigRecord | None) -> RunConfig:
    if record is None:
        return RunConfig()
    return config_from_dict(record.as_record())


def _eval_radii(req: sch.EvalRequest) -> np.ndarray:
    have_list = req.r_values is not None
    range_parts = (req.r_start, req.r_stop, req.r_step)
    have_range = any(v is not None for v in range_parts)
    if have_list == have_range:
        raise DomainError("give either r values or an r range, not both")
    if have_list:
        if not req.r_values:
            raise DomainError("r value list is empty")
        return np.asarray(req.r_values, dtype=float)
    if any(v is None for v in range_parts):
        raise DomainError("an r range needs start, stop and step")
    start, stop, step = (float(v) for v in range_parts)
    if step <= 0.0 or stop < start:
        raise DomainError("need step > 0 and stop >= start")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def handle_eval(req: sch.EvalRequest) -> sch.EvalResponse:
    spec = _spec(req.spec)
    r = _eval_radii(req)
    v = np.atleast_1d(pot.evaluate(spec, r))
    d1 = np.atleast_1d(pot.derivative1(spec, r))
    d2 = np.atleast_1d(pot.derivative2(spec, r))
    rows = [
        sch.EvalRow(r=float(ri), value=float(vi),
                    derivative1=float(g), derivative2=float(h))
        for ri, vi, g, h in zip(np.atleast_1d(r), v, d1, d2)
    ]
    return sch.EvalResponse(rows=rows)


def handle_diagnose(req: sch.DiagnoseRequest) -> sch.DiagnoseResponse:
    report = flaw_report(_spec(req.spec))
    return sch.DiagnoseResponse(**report.to_dict())


def handle_correct(req: sch.CorrectRequest) -> sch.CorrectResponse:
    corrected = correct_spec(_spec(req.spec))
    p = corrected.params
    validation = validate_correction(corrected, p.De, p.re)
    return sch.CorrectResponse(
        spec=sch.SpecRecord(**pot.spec_to_dict(corrected)),
        validation=sch.ValidationRecord(**validation.to_dict()),
    )


def handle_solve(req: sch.SolveRequest) -> sch.SolveResponse:
    spec = _spec(req.spec)
    cfg = _config(req.config)
    problem = RadialProblem(spec, req.l, cfg.kinetic)
    grid = cfg.grid_for(spec.params.re)
    states = solve_bound_states(problem, grid, n_max=req.n_max)
    levels = [sch.LevelRow(n=st.n, l=st.l, energy=st.energy) for st in states]
    return sch.SolveResponse(levels=levels, truncated=states.truncated)


def handle_fit(req: sch.FitRequest) -> sch.FitResponse:
    family = fit_family(req.family)
    data = SpectrumData(req.data.entries, req.data.weights)
    initial = pot._params_from_dict(req.initial)
    free = {pot._FIELD_NAMES.get(name, name) for name in req.free}
    cfg = _config(req.config)
    # an explicit grid override pins the grid; otherwise it adapts to re
    overridden = any(v is not None
                     for v in (cfg.r_min, cfg.r_max, cfg.n_points))
    grid = cfg.grid_for(initial.re) if overridden else None
    result = fit(family, data, initial, free, cfg.kinetic, grid)
    return sch.FitResponse(**result.to_dict())


def handle_health() -> sch.HealthResponse:
    return sch.HealthResponse(status="ok", version=__version__)

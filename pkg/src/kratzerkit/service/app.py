"""FastAPI application exposing the library over HTTP."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import DomainError, KratzerkitError, SpecLoadError
from . import handlers
from . import schemas as sch


def _status_for(exc: KratzerkitError) -> int:
    if isinstance(exc, SpecLoadError):
        return 422
    if isinstance(exc, DomainError):
        return 400
    return 409  # well-formed request, physically/mathematically impossible


def create_app() -> FastAPI:
    app = FastAPI(title="kratzerkit", version=__version__)

    @app.exception_handler(KratzerkitError)
    async def _library_error(request: Request, exc: KratzerkitError):
        body = sch.ErrorBody(error=type(exc).__name__, detail=str(exc))
        return JSONResponse(status_code=_status_for(exc),
                            content=body.model_dump())

    @app.get("/health", response_model=sch.HealthResponse)
    def health():
        return handlers.handle_health()

    @app.post("/eval", response_model=sch.EvalResponse)
    def eval_potential(req: sch.EvalRequest):
        return handlers.handle_eval(req)

    @app.post("/diagnose", response_model=sch.DiagnoseResponse)
    def diagnose(req: sch.DiagnoseRequest):
        return handlers.handle_diagnose(req)

    @app.post("/correct", response_model=sch.CorrectResponse)
    def correct(req: sch.CorrectRequest):
        return handlers.handle_correct(req)

    @app.post("/solve", response_model=sch.SolveResponse)
    def solve(req: sch.SolveRequest):
        return handlers.handle_solve(req)

    @app.post("/fit", response_model=sch.FitResponse)
    def fit_spectrum(req: sch.FitRequest):
        return handlers.handle_fit(req)

    return app


app = create_app()

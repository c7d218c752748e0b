"""Request/response models for the HTTP service.

The potential spec travels as the same JSON object the library serializes
(family + params, plus screening/additive/coefficients for corrected
specs); the library loader owns its validation, so the models only shape
the envelopes around it.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_serializer


class FormRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")
    form: str
    params: dict[str, float] = Field(default_factory=dict)


class CoefficientsRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")
    a: float
    b: float


class SpecRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")
    family: str
    params: dict[str, float]
    screening: FormRecord | None = None
    additive: FormRecord | None = None
    coefficients: CoefficientsRecord | None = None

    @model_serializer(mode="wrap")
    def _without_null_sections(self, default):
        # optional sections are present or absent in spec JSON, never null
        return {k: v for k, v in default(self).items() if v is not None}

    def as_record(self) -> dict:
        return self.model_dump()


class ConfigRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")
    unit_preset: str = "atomic"
    mass: float = 1.0
    kinetic_coefficient: float | None = None
    r_min: float | None = None
    r_max: float | None = None
    n_points: int | None = None
    output_format: str = "json"

    def as_record(self) -> dict:
        return self.model_dump()


class EvalRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    spec: SpecRecord
    r_values: list[float] | None = None
    r_start: float | None = None
    r_stop: float | None = None
    r_step: float | None = None


class EvalRow(BaseModel):
    r: float
    value: float
    derivative1: float
    derivative2: float


class EvalResponse(BaseModel):
    rows: list[EvalRow]


class DiagnoseRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    spec: SpecRecord


class DiagnoseResponse(BaseModel):
    family: str
    claimed_De: float
    claimed_re: float
    actual_re: float
    actual_De: float | None
    slope_at_claimed_re: float
    closed_form_slope: float | None
    closed_form_depth: float | None
    is_flawed: bool


class ValidationRecord(BaseModel):
    slope_residual: float
    depth_residual: float
    curvature: float
    slope_ok: bool
    depth_ok: bool
    curvature_ok: bool
    passed: bool


class CorrectRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    spec: SpecRecord


class CorrectResponse(BaseModel):
    spec: SpecRecord
    validation: ValidationRecord


class SolveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    spec: SpecRecord
    l: int = 0
    n_max: int = 10
    config: ConfigRecord | None = None


class LevelRow(BaseModel):
    n: int
    l: int
    energy: float


class SolveResponse(BaseModel):
    levels: list[LevelRow]
    truncated: bool


class SpectrumRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")
    entries: list[tuple[int, int, float]]
    weights: list[float] | None = None


class FitRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    family: str
    data: SpectrumRecord
    initial: dict[str, float]
    free: list[str]
    config: ConfigRecord | None = None


class FitResponse(BaseModel):
    family: str
    params: dict[str, float]
    square_deviation: float
    iterations: int
    converged: bool


class HealthResponse(BaseModel):
    status: str
    version: str


class ErrorBody(BaseModel):
    error: str
    detail: str

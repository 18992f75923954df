"""Request/response models for the alignment service.

Functions travel as parallel ``t``/``values`` arrays with t already in [0,1]
(domain rescaling is the client's job).  Every response carries
``schema_version`` so downstream tooling can detect format changes.
"""

from __future__ import annotations

from pydantic import BaseModel, Field, model_validator

SCHEMA_VERSION = 1


class FunctionPayload(BaseModel):
    t: list[float]
    values: list[float]

    @model_validator(mode="after")
    def _check_lengths(self):
        if len(self.t) != len(self.values):
            raise ValueError("t and values must have the same length")
        if len(self.t) < 2:
            raise ValueError("need at least two samples")
        return self


class CellPayload(BaseModel):
    """A step function: nodes plus one value per cell."""

    nodes: list[float]
    cell_values: list[float]

    @model_validator(mode="after")
    def _check_lengths(self):
        if len(self.nodes) != len(self.cell_values) + 1:
            raise ValueError("need exactly one cell value per node interval")
        return self


class DpOptions(BaseModel):
    grid_size: int = 65
    slope_set: list[tuple[int, int]] | None = None  # None selects the default set
    band_width: int | None = None


class ErrorBody(BaseModel):
    type: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorBody


class HealthResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    status: str = "ok"
    version: str


class SrsfRequest(BaseModel):
    f: FunctionPayload


class SrsfResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    q: CellPayload
    midpoints: list[float]
    norm: float


class ReconstructRequest(BaseModel):
    q: CellPayload
    f0: float = 0.0


class FunctionResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    f: FunctionPayload


class AlignRequest(BaseModel):
    f1: FunctionPayload
    f2: FunctionPayload
    dp: DpOptions = Field(default_factory=DpOptions)
    normalize: bool = True


class AlignResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    distance: float
    warp: list[tuple[float, float]]
    aligned_f2: FunctionPayload
    nodes_expanded: int
    config: DpOptions
    normalized: bool
    constant_function_convention: bool = False


class FisherRaoRequest(BaseModel):
    f1: FunctionPayload
    f2: FunctionPayload


class FisherRaoResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    distance: float


class GeodesicRequest(BaseModel):
    f1: FunctionPayload
    f2: FunctionPayload
    steps: int = 5
    aligned: bool = False
    dp: DpOptions = Field(default_factory=DpOptions)


class GeodesicResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    steps: list[FunctionPayload]


class ConstantSpeedRequest(BaseModel):
    f: FunctionPayload


class ConstantSpeedResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    h: FunctionPayload
    gamma: FunctionPayload
    length: float


class CantorRequest(BaseModel):
    x: str  # exact literal: "1/3", "0.25", ...
    digits: int = 40


class CantorResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    x: str
    value: float
    value_exact: str
    ternary_digits: str
    in_cantor_set: bool


class VerifyRequest(BaseModel):
    seed: int = 0
    suites: list[str] | None = None
    dp_oracle_m: int | None = None


class VerifyCheck(BaseModel):
    suite: str
    name: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    seed: int
    suites: list[str]
    passed: bool
    checks: list[VerifyCheck]

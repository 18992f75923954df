"""FastAPI service wrapping the core package.

Domain degeneracies (zero-length functions, basepoint mismatches, flat
slopes) come back as HTTP 422 with a typed error body, except for zero-length
alignment, which succeeds under the constant-function convention and flags it
in the response.  Input validation failures are 422s from pydantic; nothing
here keeps state, so any number of clients can share one instance.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..align import (
    DpConfig,
    constant_function_alignment,
    elastic_distance,
    fisher_rao_distance,
    geodesic_path,
    shape_distance,
)
from ..errors import ElasticFdaError, InputError, ZeroLength
from ..fnspace import Grid, SampledFunction, sampled_from_points
from ..measure import cantor_function, in_cantor_set, ternary_digits
from ..srsf import Srsf, constant_speed, normalize, reconstruct, srsf_of
from ..verify import run_verification
from ..warps import compose_function
from . import schemas as S
from ..fnspace import CellFunction


def _function(payload: S.FunctionPayload) -> SampledFunction:
    return sampled_from_points(payload.t, payload.values)


def _payload(f: SampledFunction) -> S.FunctionPayload:
    return S.FunctionPayload(t=f.grid.nodes.tolist(), values=f.values.tolist())


def _cells(payload: S.CellPayload) -> CellFunction:
    return CellFunction(Grid(payload.nodes), payload.cell_values)


def _dp_config(opts: S.DpOptions) -> DpConfig:
    kwargs: dict = {"grid_size": opts.grid_size, "band_width": opts.band_width}
    if opts.slope_set is not None:
        kwargs["slope_set"] = tuple((a, b) for a, b in opts.slope_set)
    return DpConfig(**kwargs)


def _dp_echo(cfg: DpConfig) -> S.DpOptions:
    return S.DpOptions(grid_size=cfg.grid_size, slope_set=list(cfg.slope_set), band_width=cfg.band_width)


def create_app() -> FastAPI:
    app = FastAPI(
        title="elastic-fda",
        version=__version__,
        description="Elastic alignment, SRSF transforms, geodesics, and measure-theory checks on [0,1]",
    )

    @app.exception_handler(ElasticFdaError)
    async def _domain_error(request: Request, exc: ElasticFdaError):
        status = 422
        return JSONResponse(
            status_code=status,
            content=S.ErrorResponse(
                error=S.ErrorBody(type=type(exc).__name__, message=str(exc))
            ).model_dump(),
        )

    @app.get("/health", response_model=S.HealthResponse)
    def health() -> S.HealthResponse:
        return S.HealthResponse(version=__version__)

    @app.post("/srsf", response_model=S.SrsfResponse)
    def srsf_endpoint(req: S.SrsfRequest) -> S.SrsfResponse:
        q = srsf_of(_function(req.f))
        return S.SrsfResponse(
            q=S.CellPayload(nodes=q.grid.nodes.tolist(), cell_values=q.q.cell_values.tolist()),
            midpoints=q.grid.midpoints().tolist(),
            norm=q.norm,
        )

    @app.post("/reconstruct", response_model=S.FunctionResponse)
    def reconstruct_endpoint(req: S.ReconstructRequest) -> S.FunctionResponse:
        f = reconstruct(Srsf.from_cells(_cells(req.q)), req.f0)
        return S.FunctionResponse(f=_payload(f))

    @app.post("/align", response_model=S.AlignResponse)
    def align_endpoint(req: S.AlignRequest) -> S.AlignResponse:
        f1, f2 = _function(req.f1), _function(req.f2)
        cfg = _dp_config(req.dp)
        try:
            if req.normalize:
                result = shape_distance(f1, f2, cfg)
            else:
                result = elastic_distance(srsf_of(f1), srsf_of(f2), cfg)
                result = _attach_aligned(result, f2)
        except ZeroLength:
            result = constant_function_alignment(srsf_of(f1), srsf_of(f2), cfg)
            result = _attach_aligned(result, f2)
        aligned = result.aligned_f if result.aligned_f is not None else f2
        warp_pairs = list(zip(result.warp.grid.nodes.tolist(), result.warp.values.tolist()))
        return S.AlignResponse(
            distance=result.distance,
            warp=warp_pairs,
            aligned_f2=_payload(aligned),
            nodes_expanded=result.nodes_expanded,
            config=_dp_echo(cfg),
            normalized=req.normalize,
            constant_function_convention=result.constant_function_convention,
        )

    @app.post("/fisher-rao", response_model=S.FisherRaoResponse)
    def fisher_rao_endpoint(req: S.FisherRaoRequest) -> S.FisherRaoResponse:
        return S.FisherRaoResponse(distance=fisher_rao_distance(_function(req.f1), _function(req.f2)))

    @app.post("/geodesic", response_model=S.GeodesicResponse)
    def geodesic_endpoint(req: S.GeodesicRequest) -> S.GeodesicResponse:
        steps = geodesic_path(
            _function(req.f1), _function(req.f2), req.steps, aligned=req.aligned, cfg=_dp_config(req.dp)
        )
        return S.GeodesicResponse(steps=[_payload(f) for f in steps])

    @app.post("/constant-speed", response_model=S.ConstantSpeedResponse)
    def constant_speed_endpoint(req: S.ConstantSpeedRequest) -> S.ConstantSpeedResponse:
        f = _function(req.f)
        h, gamma = constant_speed(f)
        length = srsf_of(f).norm ** 2
        return S.ConstantSpeedResponse(h=_payload(h), gamma=_payload(gamma.gamma), length=length)

    @app.post("/cantor", response_model=S.CantorResponse)
    def cantor_endpoint(req: S.CantorRequest) -> S.CantorResponse:
        try:
            x = Fraction(req.x)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"could not parse {req.x!r} as an exact number") from None
        if x < 0 or x > 1:
            raise InputError("x must lie in [0,1]")
        digits = min(req.digits, 40)
        value = cantor_function(x, min(req.digits, 52))
        return S.CantorResponse(
            x=str(x),
            value=value,
            value_exact=str(Fraction(value).limit_denominator(2**60)),
            ternary_digits="0." + "".join(str(d) for d in ternary_digits(x, digits)),
            in_cantor_set=in_cantor_set(x, digits),
        )

    @app.post("/verify", response_model=S.VerifyResponse)
    def verify_endpoint(req: S.VerifyRequest) -> S.VerifyResponse:
        report = run_verification(seed=req.seed, suites=req.suites, dp_oracle_m=req.dp_oracle_m)
        return S.VerifyResponse(**report)

    return app


def _attach_aligned(result, f2: SampledFunction):
    from dataclasses import replace

    return replace(result, aligned_f=compose_function(f2, result.warp))

"""FastAPI application exposing the four pipeline operations.

Package errors surface as HTTP 400 with a machine-readable code so a client
can distinguish bad parameters ("validation"), points outside an operator's
domain ("domain"), and a diverged time integration ("non_finite").  Schema
violations keep FastAPI's stock 422.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import DomainError, HadamardError, NonFiniteStateError
from ..pipeline import run_approx, run_compare, run_fde, run_sweep
from .schemas import (
    ApproxRequest,
    CompareRequest,
    CompareResponse,
    FdeRequest,
    FdeResponse,
    HealthResponse,
    SweepRequest,
    TableResponse,
)

__all__ = ["app", "create_app", "error_code"]


def error_code(exc: HadamardError) -> str:
    if isinstance(exc, NonFiniteStateError):
        return "non_finite"
    if isinstance(exc, DomainError):
        return "domain"
    return "validation"


def create_app() -> FastAPI:
    app = FastAPI(title="hadamard-frac", version=__version__)

    @app.exception_handler(HadamardError)
    async def handle_package_error(request: Request, exc: HadamardError):
        return JSONResponse(
            status_code=400,
            content={"detail": {"code": error_code(exc), "message": str(exc)}},
        )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse()

    @app.post("/approx", response_model=TableResponse)
    def approx(req: ApproxRequest) -> TableResponse:
        table = run_approx(
            kind=req.kind, side=req.side, alpha=req.alpha, a=req.a, b=req.b,
            depth=req.n, trunc=req.N, fn=req.fn, table_text=req.table,
            points=req.points, panels=req.panels,
            nodes_per_panel=req.nodes_per_panel, lift=req.lift,
        )
        return TableResponse.from_table(table)

    @app.post("/compare", response_model=CompareResponse)
    def compare(req: CompareRequest) -> CompareResponse:
        outcome = run_compare(
            kind=req.kind, side=req.side, alpha=req.alpha, a=req.a, b=req.b,
            depth=req.n, trunc=req.N, fn=req.fn, table_text=req.table,
            points=req.points, panels=req.panels,
            nodes_per_panel=req.nodes_per_panel, lift=req.lift,
            reference=req.reference,
        )
        return CompareResponse.from_table(
            outcome.table, dist=outcome.dist, violations=outcome.violations
        )

    @app.post("/sweep", response_model=TableResponse)
    def sweep(req: SweepRequest) -> TableResponse:
        table = run_sweep(
            kind=req.kind, side=req.side, alpha=req.alpha, a=req.a, b=req.b,
            depth_list=req.n_list, trunc_list=req.N_list, fn=req.fn,
            table_text=req.table, points=req.points, panels=req.panels,
            nodes_per_panel=req.nodes_per_panel, lift=req.lift,
            reference=req.reference,
        )
        return TableResponse.from_table(table)

    @app.post("/fde", response_model=FdeResponse)
    def fde(req: FdeRequest) -> FdeResponse:
        outcome = run_fde(
            trunc=req.N, steps=req.steps, start_offset=req.delta,
            t_end=req.t_end, c=req.c, initial_value=req.x0,
            dump_states=req.dump_states,
        )
        return FdeResponse.from_table(outcome.table, dist=outcome.dist)

    return app


app = create_app()

"""FastAPI application wrapping the core package.

Run with ``uvicorn odereduce.service.app:app``.  Every toolkit error carries
its own HTTP status and the CLI exit code, surfaced in a uniform error body so
thin clients can translate failures without re-parsing messages.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import OdeReduceError
from . import handlers, schemas


def create_app() -> FastAPI:
    app = FastAPI(title="odereduce", version=__version__)

    @app.exception_handler(OdeReduceError)
    async def toolkit_error_handler(request: Request, exc: OdeReduceError):
        body = schemas.ErrorResponse(
            error=schemas.ErrorDetail(
                code=type(exc).__name__, message=str(exc), exit_code=exc.exit_code
            )
        )
        return JSONResponse(status_code=exc.http_status, content=body.model_dump())

    @app.get("/health")
    async def health():
        return {"status": "ok", "version": __version__}

    @app.post("/reduce", response_model=schemas.ReduceResponse)
    async def reduce_endpoint(req: schemas.ReduceRequest):
        return handlers.handle_reduce(req)

    @app.post("/fracpow", response_model=schemas.FracPowResponse)
    async def fracpow_endpoint(req: schemas.FracPowRequest):
        return handlers.handle_fracpow(req)

    @app.post("/simulate", response_model=schemas.SimulateResponse)
    async def simulate_endpoint(req: schemas.SimulateRequest):
        return handlers.handle_simulate(req)

    @app.post("/demo/oscillator", response_model=schemas.DemoResponse)
    async def demo_oscillator_endpoint(req: schemas.OscillatorDemoRequest):
        return handlers.handle_demo_oscillator(req)

    @app.post("/demo/thirdorder", response_model=schemas.DemoResponse)
    async def demo_thirdorder_endpoint(req: schemas.ThirdOrderDemoRequest):
        return handlers.handle_demo_thirdorder(req)

    @app.post("/demo/cascade", response_model=schemas.DemoResponse)
    async def demo_cascade_endpoint(req: schemas.CascadeDemoRequest):
        return handlers.handle_demo_cascade(req)

    return app


app = create_app()

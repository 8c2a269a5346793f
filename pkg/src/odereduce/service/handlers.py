"""Request handlers shared by the HTTP endpoints and the in-process CLI client.

Each handler converts a request model into core calls and back into a response
model, raising the core exception types; the transport layer (HTTP status or
CLI exit code) is decided by whoever catches them.
"""

from __future__ import annotations

import numpy as np

from .. import demos
from ..errors import InputFormatError
from ..forcing import get_forcing
from ..fracpow import frac_power
from ..reduction import companion_scalar_reduce, reduce
from ..serde import (
    matrix_payload,
    parse_matrix,
    parse_vector,
    reduced_equation_payload,
    trajectory_csv,
)
from ..simulate import SimProblem, compare_components, integrate_scalar, integrate_system
from ..tolerances import Tolerances
from . import schemas


def handle_reduce(req: schemas.ReduceRequest) -> schemas.ReduceResponse:
    mat = parse_matrix(req.matrix.model_dump())
    eq = reduce(mat)
    return schemas.ReduceResponse(**reduced_equation_payload(eq))


def handle_fracpow(
    req: schemas.FracPowRequest, tol: Tolerances | None = None
) -> schemas.FracPowResponse:
    mat = parse_matrix(req.matrix.model_dump())
    tol = tol or Tolerances.from_env()
    result = frac_power(mat, req.alpha, req.method, tol)
    return schemas.FracPowResponse(matrix=schemas.MatrixPayload(**matrix_payload(result)))


def handle_simulate(
    req: schemas.SimulateRequest, tol: Tolerances | None = None
) -> schemas.SimulateResponse:
    mat = parse_matrix(req.matrix.model_dump())
    n = mat.shape[0]
    tol = tol or Tolerances.from_env()
    if req.x0 is None:
        x0 = np.zeros(n, dtype=complex)
        x0[0] = 1.0
    else:
        x0 = parse_vector(req.x0, n)
    if not req.step > 0:
        raise InputFormatError(f"step must be positive, got {req.step}")
    forcing = get_forcing(req.forcing, n)
    problem = SimProblem(a=mat, forcing=forcing, x0=x0, tau=req.t0, t_end=req.t1, h=req.step)
    traj = integrate_system(problem, tol)
    deviation = None
    if req.compare_reduced:
        scalar = companion_scalar_reduce(mat, x0, forcing, req.t0)
        reduced_traj = integrate_scalar(scalar, forcing, req.t0, req.t1, req.step, tol)
        deviation = compare_components(traj, reduced_traj, 0, 0)
    summary = schemas.SimulateSummary(
        n=n,
        forcing=req.forcing,
        t0=req.t0,
        t1=req.t1,
        step=req.step,
        samples=len(traj.t),
        max_deviation=deviation,
    )
    return schemas.SimulateResponse(summary=summary, csv=trajectory_csv(traj))


def handle_demo_oscillator(
    req: schemas.OscillatorDemoRequest, tol: Tolerances | None = None
) -> schemas.DemoResponse:
    report = demos.demo_oscillator(
        req.omega, req.alpha, req.forcing, req.t0, req.t1, req.step,
        tol or Tolerances.from_env(),
    )
    return schemas.DemoResponse(report=report)


def handle_demo_thirdorder(
    req: schemas.ThirdOrderDemoRequest, tol: Tolerances | None = None
) -> schemas.DemoResponse:
    report = demos.demo_thirdorder(
        req.beta, req.alpha, req.forcing, req.t0, req.t1, req.step,
        tol or Tolerances.from_env(),
    )
    return schemas.DemoResponse(report=report)


def handle_demo_cascade(
    req: schemas.CascadeDemoRequest, tol: Tolerances | None = None
) -> schemas.DemoResponse:
    x0 = None if req.x0 is None else parse_vector(req.x0, 3)
    report = demos.demo_cascade(
        req.r0, req.v1, req.v2, req.v3, x0, req.t0, req.t1, req.step,
        tol or Tolerances.from_env(),
    )
    return schemas.DemoResponse(report=report)

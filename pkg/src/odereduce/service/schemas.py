"""Pydantic request/response models for the HTTP service.

Complex numbers travel as literal strings ("a", "a+bi", "a-bi"); matrices as
{"n": ..., "entries": [[...]]}; the models here only shape the envelopes,
numeric validation happens in the core parsers so the CLI and the service
report identical errors.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class MatrixPayload(BaseModel):
    n: int
    entries: list[list[str]]


class ReduceRequest(BaseModel):
    matrix: MatrixPayload


class ReduceResponse(BaseModel):
    n: int
    a: list[str]
    operators: list[MatrixPayload]
    rhs_operator: MatrixPayload


class FracPowRequest(BaseModel):
    matrix: MatrixPayload
    alpha: float
    method: Literal["eig", "integral", "explicit2x2", "companion3"] = "eig"


class FracPowResponse(BaseModel):
    matrix: MatrixPayload


class SimulateRequest(BaseModel):
    matrix: MatrixPayload
    forcing: str = "zero"
    x0: list[str] | None = None
    t0: float = 0.0
    t1: float = 5.0
    step: float = Field(default=1e-3)
    compare_reduced: bool = False


class SimulateSummary(BaseModel):
    n: int
    forcing: str
    t0: float
    t1: float
    step: float
    samples: int
    max_deviation: float | None = None


class SimulateResponse(BaseModel):
    summary: SimulateSummary
    csv: str


class OscillatorDemoRequest(BaseModel):
    omega: float
    alpha: float
    forcing: str = "zero"
    t0: float = 0.0
    t1: float = 5.0
    step: float = 1e-3


class ThirdOrderDemoRequest(BaseModel):
    beta: float
    alpha: float
    forcing: str = "zero"
    t0: float = 0.0
    t1: float = 5.0
    step: float = 1e-3


class CascadeDemoRequest(BaseModel):
    r0: float
    v1: float
    v2: float
    v3: float
    x0: list[str] | None = None
    t0: float = 0.0
    t1: float = 5.0
    step: float = 1e-3


class DemoResponse(BaseModel):
    report: dict


class ErrorDetail(BaseModel):
    code: str
    message: str
    exit_code: int


class ErrorResponse(BaseModel):
    error: ErrorDetail

"""Fixed-step RK4 integration of systems and of reduced scalar equations.

Uniform grids only: the trajectory comparisons and the finite-difference
residual stencils both assume a constant step.  Blow-ups abort loudly with the
first offending time rather than returning garbage samples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BlowUpError, DimensionError, InputFormatError
from .linalg import as_matrix, as_vector
from .reduction import ForcingSpec, ScalarReduction
from .tolerances import DEFAULT, Tolerances


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled states; states[i] is the vector at t[i]."""

    t: np.ndarray
    states: np.ndarray
    h: float

    def __post_init__(self):
        if len(self.t) != len(self.states):
            raise DimensionError("time and state sample counts differ")
        if len(self.t) >= 2:
            gaps = np.diff(self.t)
            scale = max(abs(self.h), 1e-300)
            if np.any(gaps <= 0) or float(np.max(np.abs(gaps - self.h))) > 1e-12 * scale * len(self.t):
                raise InputFormatError("trajectory grid is not uniform")

    @property
    def n(self) -> int:
        return self.states.shape[1]


@dataclass(frozen=True)
class SimProblem:
    a: np.ndarray
    forcing: ForcingSpec
    x0: np.ndarray
    tau: float
    t_end: float
    h: float

    def __post_init__(self):
        a = as_matrix(self.a)
        as_vector(self.x0, a.shape[0])
        if self.forcing.n != a.shape[0]:
            raise DimensionError("forcing dimension does not match the matrix")
        if not self.h > 0:
            raise InputFormatError(f"step must be positive, got {self.h}")
        if not self.t_end > self.tau:
            raise InputFormatError("t_end must exceed tau")


def _grid(tau: float, t_end: float, h: float) -> np.ndarray:
    steps = int(round((t_end - tau) / h))
    steps = max(steps, 1)
    return tau + h * np.arange(steps + 1)


def _check_finite(x: np.ndarray, t: float, tol: Tolerances):
    if not np.all(np.isfinite(x.view(float))) or float(np.max(np.abs(x))) > tol.blowup:
        raise BlowUpError(f"state blew up at t={t:.6g}", t_bad=t)


def integrate_system(p: SimProblem, tol: Tolerances = DEFAULT) -> Trajectory:
    """Classical RK4 on X' = AX + F(t, X)."""
    a = as_matrix(p.a)
    t_grid = _grid(p.tau, p.t_end, p.h)
    h = p.h
    f = p.forcing.eval
    x = as_vector(p.x0, a.shape[0]).copy()
    states = np.empty((len(t_grid), a.shape[0]), dtype=complex)
    states[0] = x
    for i, t in enumerate(t_grid[:-1]):
        t = float(t)
        k1 = a @ x + f(t, x)
        k2 = a @ (x + 0.5 * h * k1) + f(t + 0.5 * h, x + 0.5 * h * k1)
        k3 = a @ (x + 0.5 * h * k2) + f(t + 0.5 * h, x + 0.5 * h * k2)
        k4 = a @ (x + h * k3) + f(t + h, x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _check_finite(x, float(t_grid[i + 1]), tol)
        states[i + 1] = x
    return Trajectory(t=t_grid, states=states, h=h)


def integrate_scalar(
    s: ScalarReduction,
    forcing: ForcingSpec,
    tau: float,
    t_end: float,
    h: float,
    tol: Tolerances = DEFAULT,
) -> Trajectory:
    """Integrate a scalar reduction by companion embedding; component 0 is x.

    The companion state (x, x', ...) supplies exactly the derivatives the
    total-derivative maps of f need for the right-hand side terms.
    """
    if len(s.initial_values) != s.order:
        raise InputFormatError(
            f"need {s.order} initial values for an order-{s.order} reduction"
        )
    sf = forcing.structured
    live_terms = [(mult, order) for mult, order in s.rhs_terms if mult != 0]
    if live_terms and sf is None:
        raise InputFormatError("scalar integration needs the structured scalar forcing")
    max_order = max((order for _, order in live_terms), default=0)
    if sf is not None and max_order > len(sf.f_t_derivs):
        raise InputFormatError(
            f"rhs needs f-derivative order {max_order}, forcing supplies {len(sf.f_t_derivs)}"
        )
    m = s.order
    coeffs = np.asarray(s.lhs_coeffs, dtype=complex)

    def rhs_value(t: float, y: np.ndarray) -> complex:
        if not live_terms:
            return 0j
        x1 = complex(y[0])
        derivs = tuple(complex(v) for v in y[1:])
        total = 0j
        for mult, order in live_terms:
            if order == 0:
                total += mult * sf.f(t, x1)
            else:
                total += mult * sf.f_t_derivs[order - 1](t, x1, derivs)
        return total

    def deriv(t: float, y: np.ndarray) -> np.ndarray:
        out = np.empty(m, dtype=complex)
        out[:-1] = y[1:]
        out[-1] = -np.dot(coeffs, y) + rhs_value(t, y)
        return out

    t_grid = _grid(tau, t_end, h)
    y = np.asarray(s.initial_values, dtype=complex).copy()
    states = np.empty((len(t_grid), m), dtype=complex)
    states[0] = y
    for i, t in enumerate(t_grid[:-1]):
        t = float(t)
        k1 = deriv(t, y)
        k2 = deriv(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = deriv(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = deriv(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _check_finite(y, float(t_grid[i + 1]), tol)
        states[i + 1] = y
    return Trajectory(t=t_grid, states=states, h=h)


def compare_components(t1: Trajectory, t2: Trajectory, i: int, j: int) -> float:
    """Max absolute deviation between component i of t1 and component j of t2."""
    if len(t1.t) != len(t2.t) or float(np.max(np.abs(t1.t - t2.t))) > 1e-12 * max(
        1.0, float(np.max(np.abs(t1.t)))
    ):
        raise InputFormatError("trajectories are sampled on different grids")
    return float(np.max(np.abs(t1.states[:, i] - t2.states[:, j])))

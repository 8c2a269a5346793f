"""Reduction of X' = AX + F(t,X) to an equivalent scalar nth-order equation.

The machinery rests on two facts.  First, the prefix polynomials of the monic
characteristic polynomial p_A,

    p_j(lambda) = lambda^j + a_{n-1} lambda^{j-1} + ... + a_{n-j},   p_0 = 1,

satisfy p_{j+1}(lambda) = lambda p_j(lambda) + a_{n-j-1} and p_n = p_A.
Second, differentiating the system repeatedly gives the derivative chain

    X^(k) = A^k X + sum_{j=0}^{k-1} A^j d_t^(k-j-1) F(t, X(t)),

where d_t^(m) denotes the m-th total time derivative of t -> F(t, X(t)).
Multiplying X^(k) by a_k and summing, Cayley-Hamilton kills the A^k X block
and leaves the reduced equation

    X^(n) + a_{n-1} X^(n-1) + ... + a_0 X = sum_{j=0}^{n-1} P_j d_t^(n-j-1) F,

with operator matrices P_j = p_j(A).  For companion-placed scalar forcing
F = e_n f(t, x_1) and n in {2, 3} the first component collapses to an explicit
scalar Cauchy problem, built here with initial values propagated through the
derivative chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError, InputFormatError
from .linalg import CharPoly, as_matrix, as_vector, char_poly, identity, inf_norm, poly_eval_matrix

# total-derivative map signature: (t, X, (X', X'', ...)) -> vector value
VectorDerivMap = Callable[[float, np.ndarray, tuple], np.ndarray]
ScalarDerivMap = Callable[[float, complex, tuple], complex]


@dataclass(frozen=True)
class StructuredForcing:
    """Companion-placed scalar forcing F = e_row * f(t, x_1).

    ``row`` is 1-based.  ``f_t_derivs[k-1]`` evaluates the k-th total time
    derivative of t -> f(t, x_1(t)) given x_1 and its derivatives.
    """

    row: int
    f: Callable[[float, complex], complex]
    f_t_derivs: tuple[ScalarDerivMap, ...] = ()
    name: str = ""


@dataclass(frozen=True)
class ForcingSpec:
    """Nonlinearity F(t, X) with declared total time derivatives.

    ``t_derivatives[k-1]`` is the map for d^k/dt^k [F(t, X(t))]; it receives
    the state and the already-computed lower-order state derivatives, which is
    all a total derivative of order k can depend on.
    """

    n: int
    eval: Callable[[float, np.ndarray], np.ndarray]
    t_derivatives: tuple[VectorDerivMap, ...] = ()
    structured: StructuredForcing | None = None

    def __post_init__(self):
        if self.structured is not None and not 1 <= self.structured.row <= self.n:
            raise DimensionError(
                f"structured row {self.structured.row} outside 1..{self.n}"
            )

    def total_derivative(self, k: int, t: float, x: np.ndarray, x_derivs: tuple) -> np.ndarray:
        if k == 0:
            return np.asarray(self.eval(t, x), dtype=complex)
        if k > len(self.t_derivatives):
            raise InputFormatError(
                f"forcing supplies total derivatives up to order {len(self.t_derivatives)}, "
                f"order {k} requested"
            )
        return np.asarray(self.t_derivatives[k - 1](t, x, x_derivs), dtype=complex)

    @classmethod
    def zero(cls, n: int) -> "ForcingSpec":
        z = lambda t, x: np.zeros(n, dtype=complex)
        zd = tuple((lambda t, x, d: np.zeros(n, dtype=complex)) for _ in range(max(n - 1, 2)))
        structured = StructuredForcing(row=n, f=lambda t, x: 0j,
                                       f_t_derivs=(lambda t, x, d: 0j, lambda t, x, d: 0j),
                                       name="zero")
        return cls(n=n, eval=z, t_derivatives=zd, structured=structured)

    @classmethod
    def from_structured(cls, n: int, structured: StructuredForcing) -> "ForcingSpec":
        """Lift a scalar companion forcing to the vector ForcingSpec."""
        r = structured.row - 1

        def ev(t: float, x: np.ndarray) -> np.ndarray:
            out = np.zeros(n, dtype=complex)
            out[r] = structured.f(t, complex(x[0]))
            return out

        def make_map(k: int) -> VectorDerivMap:
            def dk(t: float, x: np.ndarray, x_derivs: tuple) -> np.ndarray:
                x1 = complex(x[0])
                x1_derivs = tuple(complex(d[0]) for d in x_derivs[:k])
                out = np.zeros(n, dtype=complex)
                out[r] = structured.f_t_derivs[k - 1](t, x1, x1_derivs)
                return out

            return dk

        maps = tuple(make_map(k) for k in range(1, len(structured.f_t_derivs) + 1))
        return cls(n=n, eval=ev, t_derivatives=maps, structured=structured)


@dataclass(frozen=True)
class OperatorFamily:
    """Prefix polynomials p_0..p_n of p_A and their evaluations P_j = p_j(A), j < n."""

    n: int
    polys: tuple[tuple[complex, ...], ...]
    matrices: tuple[np.ndarray, ...]


def build_operator_family(a: CharPoly, mat: np.ndarray) -> OperatorFamily:
    mat = as_matrix(mat)
    n = mat.shape[0]
    if a.n != n:
        raise DimensionError(f"characteristic polynomial degree {a.n} != matrix dimension {n}")
    full = a.full_coeffs()  # (a_0, ..., a_{n-1}, 1)
    # p_j has ascending coefficients (a_{n-j}, ..., a_{n-1}, 1)
    polys = tuple(full[n - j :] for j in range(n + 1))
    matrices = tuple(poly_eval_matrix(polys[j], mat) for j in range(n))
    return OperatorFamily(n=n, polys=polys, matrices=matrices)


@dataclass(frozen=True)
class ReducedEquation:
    """Scalar-side form of the reduction: X^(n) + sum a_k X^(k) equals
    rhs_operator @ F plus the lower_operators applied to higher F-derivatives."""

    n: int
    a: CharPoly
    operators: OperatorFamily
    rhs_operator: np.ndarray       # P_{n-1}, multiplies F itself
    lower_operators: tuple[np.ndarray, ...]  # P_j multiplies d_t^(n-j-1) F, j = 0..n-2


def reduce(mat: np.ndarray) -> ReducedEquation:
    """Assemble the reduced nth-order equation for X' = AX + F."""
    mat = as_matrix(mat)
    a = char_poly(mat)
    ops = build_operator_family(a, mat)
    return ReducedEquation(
        n=mat.shape[0],
        a=a,
        operators=ops,
        rhs_operator=ops.matrices[-1],
        lower_operators=ops.matrices[:-1],
    )


def derivative_stack(
    mat: np.ndarray, x0: np.ndarray, forcing: ForcingSpec, tau: float, k: int
) -> list[np.ndarray]:
    """[X'(tau), ..., X^(k)(tau)] by the derivative chain.

    Each X^(m) = A^m X + sum_{j<m} A^j d_t^(m-j-1) F(tau), with the total
    F-derivatives fed the lower-order chain values as they become available.
    """
    mat = as_matrix(mat)
    n = mat.shape[0]
    x0 = as_vector(x0, n)
    if not 1 <= k:
        raise InputFormatError(f"derivative order k={k} must be >= 1")
    powers = [identity(n)]
    for _ in range(k):
        powers.append(powers[-1] @ mat)
    stack: list[np.ndarray] = []
    f_vals: list[np.ndarray] = []  # d_t^(m) F at tau, m = 0..k-1
    for m in range(1, k + 1):
        f_vals.append(forcing.total_derivative(m - 1, tau, x0, tuple(stack)))
        xm = powers[m] @ x0
        for j in range(m):
            xm = xm + powers[j] @ f_vals[m - 1 - j]
        stack.append(xm)
    return stack


def derivative_chain(
    mat: np.ndarray, x0: np.ndarray, forcing: ForcingSpec, tau: float, k: int
) -> np.ndarray:
    """X^(k)(tau) for the solution of X' = AX + F through (tau, x0)."""
    return derivative_stack(mat, x0, forcing, tau, k)[-1]


@dataclass(frozen=True)
class ResidualSeries:
    t: np.ndarray
    values: np.ndarray

    def max(self) -> float:
        return float(np.max(self.values)) if self.values.size else 0.0


def _iterated_central_diff(samples: np.ndarray, h: float, order: int) -> np.ndarray:
    """Apply the 2nd-order central first-difference ``order`` times.

    Input shape (N, n); output shape (N - 2*order, n) aligned with the
    interior sample times.
    """
    cur = samples
    for _ in range(order):
        cur = (cur[2:] - cur[:-2]) / (2.0 * h)
    return cur


def reduce_residual(
    eq: ReducedEquation,
    mat: np.ndarray,
    forcing: ForcingSpec,
    traj: "Trajectory",
    method: str = "chain",
) -> ResidualSeries:
    """Per-time max-norm defect of the reduced equation along a trajectory.

    ``method="chain"`` propagates state derivatives analytically through the
    derivative chain (sharp: residual collapses to the Cayley-Hamilton defect
    when the bookkeeping is right).  ``method="fd"`` estimates all derivatives,
    of the state and of t -> F(t, X(t)) alike, with iterated 2nd-order central
    differences; it needs no derivative maps and genuinely tests the sampled
    trajectory, at the price of an O(h^2) stencil floor.
    """
    mat = as_matrix(mat)
    n = eq.n
    a_full = eq.a.full_coeffs()  # (a_0, ..., a_{n-1}, 1)
    states = traj.states
    times = traj.t
    if method == "chain":
        residuals = np.empty(len(times), dtype=float)
        for i, (t, x) in enumerate(zip(times, states)):
            stack = derivative_stack(mat, x, forcing, float(t), n)
            lhs = a_full[0] * x
            for kk in range(1, n + 1):
                lhs = lhs + a_full[kk] * stack[kk - 1]
            rhs = np.zeros(n, dtype=complex)
            for j in range(n):
                rhs = rhs + eq.operators.matrices[j] @ forcing.total_derivative(
                    n - j - 1, float(t), x, tuple(stack)
                )
            residuals[i] = inf_norm(lhs - rhs)
        return ResidualSeries(t=times.copy(), values=residuals)
    if method == "fd":
        h = traj.h
        if len(times) < 2 * n + 1:
            raise InputFormatError(
                f"trajectory too short for an order-{n} finite-difference stencil"
            )
        interior = slice(n, len(times) - n)
        x_derivs = [_iterated_central_diff(states, h, k)[n - k : len(times) - n - k or None]
                    for k in range(1, n + 1)]
        f_samples = np.array([forcing.eval(float(t), x) for t, x in zip(times, states)])
        lhs = a_full[0] * states[interior]
        for kk in range(1, n + 1):
            lhs = lhs + a_full[kk] * x_derivs[kk - 1]
        rhs = np.zeros_like(lhs)
        for j in range(n):
            order = n - j - 1
            if order == 0:
                fd = f_samples[interior]
            else:
                fd = _iterated_central_diff(f_samples, h, order)[
                    n - order : len(times) - n - order or None
                ]
            rhs = rhs + fd @ eq.operators.matrices[j].T
        residuals = np.max(np.abs(lhs - rhs), axis=1)
        return ResidualSeries(t=times[interior].copy(), values=residuals)
    raise InputFormatError(f"unknown residual method {method!r}")


@dataclass(frozen=True)
class ScalarReduction:
    """Explicit scalar Cauchy problem satisfied by x_1 for companion forcing.

    x^(order) + sum_k lhs_coeffs[k] x^(k) = sum of multiplier * d_t^j f over
    ``rhs_terms``; initial values are x(tau), x'(tau), (x''(tau)).
    """

    order: int
    lhs_coeffs: tuple[complex, ...]
    rhs_terms: tuple[tuple[complex, int], ...]
    initial_values: tuple[complex, ...]
    tau: float = 0.0


def companion_scalar_reduce(
    mat: np.ndarray, x0: np.ndarray, forcing: ForcingSpec, tau: float
) -> ScalarReduction:
    """Scalar reduction for n in {2, 3} when F = e_n f(t, x_1).

    The left side carries the characteristic coefficients; the right side
    multipliers are the first row of P_j e_n.  Initial values come from the
    derivative chain, never from transcription.
    """
    mat = as_matrix(mat)
    n = mat.shape[0]
    if n not in (2, 3):
        raise InputFormatError(f"companion scalar reduction supports n in {{2, 3}}, got {n}")
    if forcing.structured is None or forcing.structured.row != n:
        raise InputFormatError("companion scalar reduction needs structured forcing at row n")
    x0 = as_vector(x0, n)
    a = char_poly(mat)
    if n == 2:
        alpha12 = complex(mat[0, 1])
        rhs_terms = ((alpha12, 0),)
    else:
        alpha13 = complex(mat[0, 2])
        f_mult = complex(mat[0, 1] * mat[1, 2] - mat[1, 1] * mat[0, 2])
        rhs_terms = ((alpha13, 1), (f_mult, 0))
    stack = derivative_stack(mat, x0, forcing, tau, n - 1)
    initial = (complex(x0[0]),) + tuple(complex(v[0]) for v in stack)
    return ScalarReduction(
        order=n,
        lhs_coeffs=a.coeffs,
        rhs_terms=rhs_terms,
        initial_values=initial,
        tau=tau,
    )


def faa_di_bruno_tuples(k: int) -> list[tuple[int, ...]]:
    """All k-tuples (i_1..i_k) of nonnegative integers with sum j*i_j = k."""
    if k < 1:
        raise InputFormatError(f"k must be >= 1, got {k}")
    out: list[tuple[int, ...]] = []

    def extend(j: int, remaining: int, prefix: list[int]):
        if j > k:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for i in range(remaining // j, -1, -1):
            extend(j + 1, remaining - j * i, prefix + [i])

    extend(1, k, [])
    return out


def faa_di_bruno_derivative(
    f_derivs: Sequence[complex], x_derivs: Sequence[complex], k: int
) -> complex:
    """k-th total derivative of t -> f(X(t)) for scalar autonomous f.

    ``f_derivs[m-1]`` is f^(m) at X(t); ``x_derivs[j-1]`` is X^(j)(t).  The sum
    runs over all multiplicity tuples with sum j*i_j = k, weighted by
    k!/(i_1!...i_k!) and the product of (X^(j)/j!)^{i_j}.
    """
    if len(f_derivs) < k or len(x_derivs) < k:
        raise InputFormatError(f"need derivative orders 1..{k} of both f and X")
    total = 0j
    for tup in faa_di_bruno_tuples(k):
        weight = float(factorial(k))
        f_order = 0
        prod = 1.0 + 0.0j
        for j, ij in enumerate(tup, start=1):
            if ij == 0:
                continue
            weight /= factorial(ij)
            f_order += ij
            prod *= (complex(x_derivs[j - 1]) / factorial(j)) ** ij
        total += weight * complex(f_derivs[f_order - 1]) * prod
    return total

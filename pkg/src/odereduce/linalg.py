"""Dense complex matrix core.

Matrices are square ``numpy`` arrays of ``complex128``; vectors are 1-D arrays.
The characteristic polynomial is computed from power traces through the
exterior-power trace determinant

    e_k = tr(Lambda^k A) = (1/k!) det [[tr A, k-1, 0, ...], [tr A^2, tr A, k-2, ...], ...]

so the monic coefficients are ``a_{n-k} = (-1)^k e_k``.  The determinant used
throughout is plain row reduction with partial pivoting on magnitude, which is
also what the trace determinant above runs on.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .errors import DimensionError, InputFormatError

# exterior_trace builds k! in floating point; past this size it is ill-conditioned anyway
MAX_DIMENSION = 20


def as_matrix(entries) -> np.ndarray:
    """Validate and return a square complex matrix (n >= 1)."""
    m = np.asarray(entries, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return m


def as_vector(entries, n: int | None = None) -> np.ndarray:
    """Validate and return a complex column vector, optionally of length n."""
    v = np.asarray(entries, dtype=complex)
    if v.ndim != 1 or v.shape[0] < 1:
        raise DimensionError(f"expected a vector, got shape {v.shape}")
    if n is not None and v.shape[0] != n:
        raise DimensionError(f"expected a vector of length {n}, got {v.shape[0]}")
    return v


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def inf_norm(m: np.ndarray) -> float:
    """Induced infinity norm (max absolute row sum); max-abs for vectors."""
    a = np.asarray(m)
    if a.ndim == 1:
        return float(np.max(np.abs(a))) if a.size else 0.0
    return float(np.max(np.sum(np.abs(a), axis=1)))


def trace(m: np.ndarray) -> complex:
    m = as_matrix(m)
    return complex(np.trace(m))


def mat_mul(m: np.ndarray, n: np.ndarray) -> np.ndarray:
    m = as_matrix(m)
    n = as_matrix(n)
    if m.shape[1] != n.shape[0]:
        raise DimensionError(f"cannot multiply {m.shape} by {n.shape}")
    return m @ n


def determinant(m: np.ndarray) -> complex:
    """Determinant by row reduction with partial pivoting on magnitude, O(n^3)."""
    a = as_matrix(m).copy()
    n = a.shape[0]
    det = 1.0 + 0.0j
    for col in range(n):
        pivot_row = col + int(np.argmax(np.abs(a[col:, col])))
        pivot = a[pivot_row, col]
        if pivot == 0:
            return 0.0 + 0.0j
        if pivot_row != col:
            a[[col, pivot_row]] = a[[pivot_row, col]]
            det = -det
        det *= pivot
        factors = a[col + 1 :, col] / pivot
        a[col + 1 :, col:] -= np.outer(factors, a[col, col:])
    return complex(det)


def power_traces(a: np.ndarray, k: int) -> list[complex]:
    """[tr(A), tr(A^2), ..., tr(A^k)] by repeated multiplication."""
    a = as_matrix(a)
    out: list[complex] = []
    p = a
    for _ in range(k):
        out.append(complex(np.trace(p)))
        p = p @ a
    return out


def exterior_trace(a: np.ndarray, k: int) -> complex:
    """k-th elementary symmetric function of the eigenvalues, tr(Lambda^k A).

    Computed literally as (1/k!) times the determinant of the k x k
    almost-triangular matrix of power traces: row i carries
    tr(A^{i+1}) ... tr(A) on and below the diagonal and the integer k-1-i on
    the superdiagonal.  k = 0 returns 1 by the empty-product convention.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if n > MAX_DIMENSION:
        raise DimensionError(f"dimension {n} exceeds supported maximum {MAX_DIMENSION}")
    if not 0 <= k <= n:
        raise InputFormatError(f"exterior trace order k={k} out of range [0, {n}]")
    if k == 0:
        return 1.0 + 0.0j
    traces = power_traces(a, k)
    b = np.zeros((k, k), dtype=complex)
    for i in range(k):
        for j in range(i + 1):
            b[i, j] = traces[i - j]
        if i + 1 < k:
            b[i, i + 1] = k - 1 - i
    return complex(determinant(b) / factorial(k))


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial; coeffs[j] is the lambda^j coefficient,
    the leading coefficient 1 is implicit and never stored."""

    n: int
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise DimensionError(f"need exactly {self.n} coefficients, got {len(self.coeffs)}")

    def full_coeffs(self) -> tuple[complex, ...]:
        """Coefficients including the leading 1, constant term first."""
        return self.coeffs + (1.0 + 0.0j,)

    def __call__(self, lam: complex) -> complex:
        acc = 1.0 + 0.0j
        for c in reversed(self.coeffs):
            acc = acc * lam + c
        return acc


def char_poly(a: np.ndarray) -> CharPoly:
    """Monic characteristic polynomial via a_{n-k} = (-1)^k tr(Lambda^k A)."""
    a = as_matrix(a)
    n = a.shape[0]
    coeffs = [0.0 + 0.0j] * n
    for k in range(1, n + 1):
        coeffs[n - k] = (-1) ** k * exterior_trace(a, k)
    return CharPoly(n=n, coeffs=tuple(coeffs))


def poly_eval_matrix(coeffs, a: np.ndarray) -> np.ndarray:
    """Evaluate a polynomial at a matrix by Horner's rule.

    ``coeffs`` are ascending (constant term first); the highest entry is the
    leading coefficient, so ``char_poly(a).full_coeffs()`` evaluates p_A(A).
    """
    a = as_matrix(a)
    cs = [complex(c) for c in np.asarray(coeffs, dtype=complex)]
    if not cs:
        raise InputFormatError("empty coefficient list")
    n = a.shape[0]
    acc = cs[-1] * identity(n)
    for c in reversed(cs[:-1]):
        acc = acc @ a + c * identity(n)
    return acc

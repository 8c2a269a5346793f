"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the code paths they check: the
characteristic polynomial is cross-checked by interpolating det(lambda I - A),
elementary symmetric functions by Newton's identities, higher derivatives by
central finite differences with Richardson extrapolation, and matrix
exponentials by eigendecomposition.
"""

from __future__ import annotations

import numpy as np
import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--seed", type=int, default=42,
        help="seed for the randomized corpora (default 42, the validated value)",
    )


@pytest.fixture
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_disk_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    """Entries uniform in the complex unit disk."""
    radius = np.sqrt(rng.uniform(0.0, 1.0, (n, n)))
    angle = rng.uniform(0.0, 2.0 * np.pi, (n, n))
    return radius * np.exp(1j * angle)


def random_stable_real_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    """Mildly damped real matrix: safe to integrate with nonlinear forcing."""
    return (rng.uniform(-0.8, 0.8, (n, n)) - 0.4 * np.eye(n)).astype(complex)


def random_spd_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    m = rng.uniform(-1.0, 1.0, (n, n))
    return (m @ m.T + n * np.eye(n)).astype(complex)


def matexp(a: np.ndarray, t: float) -> np.ndarray:
    """exp(t A) by eigendecomposition (diagonalizable test matrices only)."""
    w, v = np.linalg.eig(a)
    return v @ np.diag(np.exp(t * w)) @ np.linalg.inv(v)


def interp_char_poly(a: np.ndarray) -> np.ndarray:
    """Monic characteristic coefficients (constant first) by interpolating
    det(lambda I - A) at n+1 scaled roots of unity and solving the Vandermonde
    system -- fully independent of the trace-determinant route."""
    n = a.shape[0]
    scale = max(1.0, float(np.max(np.abs(a))))
    nodes = scale * np.exp(2j * np.pi * np.arange(n + 1) / (n + 1))
    vals = np.array([np.linalg.det(lam * np.eye(n) - a) for lam in nodes])
    vand = np.vander(nodes, n + 1, increasing=True)
    coeffs = np.linalg.solve(vand, vals)
    assert abs(coeffs[-1] - 1.0) < 1e-8 * max(1.0, scale**n)
    return coeffs[:-1]


def newton_symmetric_functions(a: np.ndarray) -> list[complex]:
    """e_0..e_n from power sums via Newton's identities (recursive oracle)."""
    n = a.shape[0]
    p = []
    m = a.copy()
    for _ in range(n):
        p.append(complex(np.trace(m)))
        m = m @ a
    e = [1.0 + 0.0j]
    for k in range(1, n + 1):
        acc = 0.0 + 0.0j
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * p[i - 1]
        e.append(acc / k)
    return e


def central_derivative(fn, x: float, order: int, h: float) -> float:
    """Order-th derivative of fn at x: iterated 2nd-order central differences
    plus one Richardson step, lifting the truncation error to O(h^4)."""

    def stencil(step: float) -> float:
        width = order
        vals = np.array([fn(x + i * step) for i in range(-width, width + 1)])
        cur = vals
        for _ in range(order):
            cur = (cur[2:] - cur[:-2]) / (2.0 * step)
        return float(cur[0])

    d_h = stencil(h)
    d_h2 = stencil(h / 2.0)
    return (4.0 * d_h2 - d_h) / 3.0


def brute_force_faa_tuples(k: int) -> set[tuple[int, ...]]:
    """Exhaustive scan over the full box [0, k]^k."""
    out = set()

    def walk(prefix: list[int]):
        if len(prefix) == k:
            if sum((j + 1) * ij for j, ij in enumerate(prefix)) == k:
                out.add(tuple(prefix))
            return
        j = len(prefix) + 1
        for ij in range(k // j + 1):
            walk(prefix + [ij])

    walk([])
    return out


def partition_count(k: int) -> int:
    """p(k) by the standard coin-style dynamic program over part sizes."""
    ways = [1] + [0] * k
    for part in range(1, k + 1):
        for m in range(part, k + 1):
            ways[m] += ways[m - part]
    return ways[k]

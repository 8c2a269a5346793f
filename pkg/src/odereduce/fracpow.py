"""Fractional matrix powers A^alpha for alpha in (0, 1].

Three routes are provided and cross-checked against each other:

* ``frac_power_eig`` — the reference: diagonalize, apply the principal scalar
  power lambda^alpha = exp(alpha Log lambda) with Arg in (-pi, pi], rebuild.
  Exactly-real negative eigenvalues are admitted with Arg = +pi (the strip is
  closed at +pi); eigenvalues hugging the cut with a tiny nonzero imaginary
  part are rejected as numerically unstable.
* ``frac_power_integral`` — quadrature of
  (sin(alpha pi)/pi) * int_0^inf lambda^(alpha-1) A (lambda I + A)^{-1} dlambda,
  admitted for spectra in the open right half-plane.  The integral is split at
  lambda = 1 and both pieces are substituted onto [0, 1] so the integrands are
  smooth: lambda = s^(1/alpha) below, lambda = 1/mu with mu = s^(1/(1-alpha))
  above.  Composite Gauss-Legendre panels are doubled until two consecutive
  refinements agree.
* closed forms — ``frac_power_2x2`` for [[a, b], [c, a]] with bc < 0, and
  ``companion3_frac_power`` for the 3x3 companion of x''' = -beta x.

A warning on the companion closed form: the matrix it builds is real and is
*not* the principal power of the companion matrix (whose spectrum touches the
negative real axis).  It coincides, entry for entry, with -(-A)^alpha under
the principal branch, which is the identity the cross-checks use.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import atan2, cos, pi, sin, sqrt

import numpy as np

from .errors import (
    BranchCutError,
    ConvergenceError,
    DefectiveMatrixError,
    MethodShapeError,
    SingularMatrixError,
    SpectrumDomainError,
)
from .linalg import as_matrix, identity
from .tolerances import DEFAULT, Tolerances

METHODS = ("eig", "integral", "explicit2x2", "companion3")


def companion_2x2(omega: float) -> np.ndarray:
    """Companion matrix of x'' + omega^2 x = 0."""
    return np.array([[0.0, 1.0], [-omega * omega, 0.0]], dtype=complex)


def companion_3x3(beta: float) -> np.ndarray:
    """Companion matrix of x''' + beta x = 0."""
    return np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [-beta, 0.0, 0.0]], dtype=complex)


def _eig_checked(a: np.ndarray, tol: Tolerances):
    if np.all(a.imag == 0):
        # real path: LAPACK keeps real eigenvalues exactly real, so a negative
        # real spectrum point lands deterministically on Arg = +pi
        w, v = np.linalg.eig(a.real)
        w = w.astype(complex)
        v = v.astype(complex)
    else:
        w, v = np.linalg.eig(a)
    scale = max(1.0, float(np.max(np.abs(w))))
    if float(np.min(np.abs(w))) < 1e-14 * scale:
        raise SingularMatrixError("matrix is numerically singular")
    # reject eigenvalues hugging (but not exactly on) the negative real axis:
    # their principal argument flips sign under perturbation
    for lam in w:
        if lam.real < 0 and lam.imag != 0 and abs(lam.imag) < 1e-13 * abs(lam):
            raise BranchCutError(
                f"eigenvalue {lam} is too close to the negative real axis for a stable branch"
            )
    cond = np.linalg.cond(v)
    if not np.isfinite(cond) or cond > tol.defective_cond:
        raise DefectiveMatrixError(
            f"eigenvector matrix condition {cond:.3e} exceeds {tol.defective_cond:.1e}"
        )
    return w, v


def principal_log(a: np.ndarray, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Matrix L with e^L = A and spectrum in the strip -pi < Im z <= pi."""
    a = as_matrix(a)
    w, v = _eig_checked(a, tol)
    return v @ np.diag(np.log(w)) @ np.linalg.inv(v)


def frac_power_eig(a: np.ndarray, alpha: float, tol: Tolerances = DEFAULT) -> np.ndarray:
    """A^alpha = V diag(lambda^alpha) V^{-1} on the principal branch."""
    a = as_matrix(a)
    if not 0.0 < alpha <= 1.0:
        raise MethodShapeError(f"alpha must lie in (0, 1], got {alpha}")
    if alpha == 1.0:
        return a.copy()
    w, v = _eig_checked(a, tol)
    powered = np.exp(alpha * np.log(w))
    return v @ np.diag(powered) @ np.linalg.inv(v)


def _gauss_panels(f, panels: int, nodes: np.ndarray, weights: np.ndarray, n: int) -> np.ndarray:
    total = np.zeros((n, n), dtype=complex)
    width = 1.0 / panels
    for p in range(panels):
        left = p * width
        for x, wgt in zip(nodes, weights):
            s = left + width * 0.5 * (x + 1.0)
            total += (wgt * width * 0.5) * f(s)
    return total


def frac_power_integral(
    a: np.ndarray, alpha: float, tol: Tolerances = DEFAULT, max_doublings: int = 10
) -> np.ndarray:
    """A^alpha by quadrature of the resolvent integral (right-half-plane spectra)."""
    a = as_matrix(a)
    if not 0.0 < alpha < 1.0:
        raise MethodShapeError(f"integral route needs alpha in (0, 1), got {alpha}")
    w = np.linalg.eigvals(a)
    if np.any(w.real <= 0):
        raise SpectrumDomainError(
            "integral route needs the spectrum in the open right half-plane"
        )
    n = a.shape[0]
    eye = identity(n)

    def resolvent_term(lam: float) -> np.ndarray:
        try:
            return np.linalg.solve(lam * eye + a, a)
        except np.linalg.LinAlgError as exc:
            raise SingularMatrixError(f"(lambda I + A) singular at lambda={lam}") from exc

    # below the split: lambda = s^(1/alpha) absorbs the lambda^(alpha-1) weight
    def lower(s: float) -> np.ndarray:
        return resolvent_term(s ** (1.0 / alpha)) / alpha

    # above the split: lambda = 1/mu, mu = s^(1/(1-alpha)) absorbs the tail weight
    def upper(s: float) -> np.ndarray:
        mu = s ** (1.0 / (1.0 - alpha))
        try:
            term = np.linalg.solve(eye + mu * a, a)
        except np.linalg.LinAlgError as exc:
            raise SingularMatrixError(f"(I + mu A) singular at mu={mu}") from exc
        return term / (1.0 - alpha)

    nodes, weights = np.polynomial.legendre.leggauss(16)
    prev: np.ndarray | None = None
    panels = 1
    for _ in range(max_doublings + 1):
        cur = _gauss_panels(lower, panels, nodes, weights, n) + _gauss_panels(
            upper, panels, nodes, weights, n
        )
        if prev is not None and float(np.max(np.abs(cur - prev))) < tol.quadrature:
            return (sin(alpha * pi) / pi) * cur
        prev = cur
        panels *= 2
    raise ConvergenceError(
        f"quadrature did not stabilize below {tol.quadrature} after {max_doublings} doublings"
    )


def frac_power_2x2(a: float, b: float, c: float, alpha: float) -> np.ndarray:
    """Closed-form [[a,b],[c,a]]^alpha for bc < 0.

    Eigenvalues are a +/- i d with d = sqrt(-bc); with r = |a + i d| and
    theta = arg(a + i d) in (0, pi) the power is
    (r^alpha / d) [[d cos(alpha theta), b sin(alpha theta)],
                   [c sin(alpha theta), d cos(alpha theta)]].
    """
    if not b * c < 0:
        raise MethodShapeError(f"explicit 2x2 route needs bc < 0, got b={b}, c={c}")
    d = sqrt(-b * c)
    r = sqrt(a * a + d * d)
    theta = atan2(d, a)  # d > 0 pins theta inside (0, pi)
    scale = r**alpha / d
    ct, st = cos(alpha * theta), sin(alpha * theta)
    return np.array(
        [[scale * d * ct, scale * b * st], [scale * c * st, scale * d * ct]], dtype=complex
    )


@dataclass(frozen=True)
class CompanionWeights:
    """Trigonometric weights k_j = (2 cos(2 pi (alpha + j) / 3) + 1) / 3.

    They satisfy k0 + k1 + k2 = 1 and the cyclic quadratic identities
    k0^2 - k1 k2 = k0 (and rotations); consequently the circulant
    [[k0, k2, k1], [k1, k0, k2], [k2, k1, k0]] has determinant exactly 1 and
    its sign-alternated companion pattern has determinant exactly -1.
    """

    alpha: float
    k0: float
    k1: float
    k2: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.k0, self.k1, self.k2)


def companion_weights(alpha: float) -> CompanionWeights:
    k = [(2.0 * cos(2.0 * pi * (alpha + j) / 3.0) + 1.0) / 3.0 for j in range(3)]
    return CompanionWeights(alpha=alpha, k0=k[0], k1=k[1], k2=k[2])


def companion3_frac_power(beta: float, alpha: float) -> np.ndarray:
    """Real fractional-power family of the 3x3 companion of x''' = -beta x.

    Built from the companion weights with the beta-exponents that make the
    family continuous at alpha = 1 (where it reproduces the companion matrix
    exactly).  Entrywise it equals -(-A)^alpha on the principal branch, which
    is what the eigendecomposition cross-check targets; it is not the
    principal power of A itself, whose spectrum meets the branch cut.
    """
    if beta <= 0:
        raise MethodShapeError(f"companion3 route needs beta > 0, got {beta}")
    if not 0.0 < alpha <= 1.0:
        raise MethodShapeError(f"alpha must lie in (0, 1], got {alpha}")
    k0, k1, k2 = companion_weights(alpha).as_tuple()
    b = float(beta)
    return np.array(
        [
            [-k0 * b ** (alpha / 3), k2 * b ** ((alpha - 1) / 3), -k1 * b ** ((alpha - 2) / 3)],
            [k1 * b ** ((alpha + 1) / 3), -k0 * b ** (alpha / 3), k2 * b ** ((alpha - 1) / 3)],
            [-k2 * b ** ((alpha + 2) / 3), k1 * b ** ((alpha + 1) / 3), -k0 * b ** (alpha / 3)],
        ],
        dtype=complex,
    )


def is_cross_2x2_shape(a: np.ndarray) -> bool:
    """Check for the [[a, b], [c, a]] shape with real entries and bc < 0."""
    a = as_matrix(a)
    if a.shape[0] != 2 or np.any(a.imag != 0):
        return False
    if a[0, 0] != a[1, 1]:
        return False
    return bool((a[0, 1] * a[1, 0]).real < 0)


def extract_companion3_beta(a: np.ndarray) -> float:
    """Return beta if A is exactly the 3x3 companion of x''' = -beta x."""
    a = as_matrix(a)
    if a.shape[0] != 3:
        raise MethodShapeError("companion3 route needs a 3x3 matrix")
    expect_beta = -a[2, 0]
    if expect_beta.imag != 0 or expect_beta.real <= 0:
        raise MethodShapeError("companion3 route needs a real beta > 0 in the corner")
    beta = float(expect_beta.real)
    if np.max(np.abs(a - companion_3x3(beta))) > 0:
        raise MethodShapeError("matrix is not the companion of x''' = -beta x")
    return beta


def frac_power(a: np.ndarray, alpha: float, method: str, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Dispatch on the stable method vocabulary: eig, integral, explicit2x2, companion3."""
    a = as_matrix(a)
    if method == "eig":
        return frac_power_eig(a, alpha, tol)
    if method == "integral":
        return frac_power_integral(a, alpha, tol)
    if method == "explicit2x2":
        if not is_cross_2x2_shape(a):
            raise MethodShapeError("explicit2x2 route needs real [[a,b],[c,a]] with bc < 0")
        return frac_power_2x2(float(a[0, 0].real), float(a[0, 1].real), float(a[1, 0].real), alpha)
    if method == "companion3":
        beta = extract_companion3_beta(a)
        return companion3_frac_power(beta, alpha)
    raise MethodShapeError(f"unknown method {method!r}; choose one of {METHODS}")

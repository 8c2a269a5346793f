"""Shipped scalar forcing library for companion-placed nonlinearities.

Each entry holds f(t, x) and hand-written total time derivatives up to order
two, which covers the reductions for n <= 3:

    d/dt   f(t, x(t)) = f_t + f_x x'
    d^2/dt^2 f(t, x(t)) = f_tt + 2 f_tx x' + f_xx (x')^2 + f_x x''
"""

from __future__ import annotations

import cmath

from .errors import UnknownForcingError
from .reduction import ForcingSpec, StructuredForcing


def _zero(t: float, x: complex) -> complex:
    return 0j


_LIBRARY: dict[str, StructuredForcing] = {
    "zero": StructuredForcing(
        row=0,  # placeholder, set when lifted
        f=_zero,
        f_t_derivs=(lambda t, x, d: 0j, lambda t, x, d: 0j),
        name="zero",
    ),
    "sin_x": StructuredForcing(
        row=0,
        f=lambda t, x: cmath.sin(x),
        f_t_derivs=(
            lambda t, x, d: cmath.cos(x) * d[0],
            lambda t, x, d: -cmath.sin(x) * d[0] ** 2 + cmath.cos(x) * d[1],
        ),
        name="sin_x",
    ),
    "neg_x3": StructuredForcing(
        row=0,
        f=lambda t, x: -(x**3),
        f_t_derivs=(
            lambda t, x, d: -3.0 * x**2 * d[0],
            lambda t, x, d: -6.0 * x * d[0] ** 2 - 3.0 * x**2 * d[1],
        ),
        name="neg_x3",
    ),
    "sin_t": StructuredForcing(
        row=0,
        f=lambda t, x: complex(cmath.sin(t)),
        f_t_derivs=(
            lambda t, x, d: complex(cmath.cos(t)),
            lambda t, x, d: complex(-cmath.sin(t)),
        ),
        name="sin_t",
    ),
    "t_x": StructuredForcing(
        row=0,
        f=lambda t, x: t * x,
        f_t_derivs=(
            lambda t, x, d: x + t * d[0],
            lambda t, x, d: 2.0 * d[0] + t * d[1],
        ),
        name="t_x",
    ),
}

FORCING_NAMES = tuple(sorted(_LIBRARY))


def get_forcing(name: str, n: int, row: int | None = None) -> ForcingSpec:
    """Look up a library forcing and lift it to dimension n (default row n)."""
    if name not in _LIBRARY:
        raise UnknownForcingError(
            f"unknown forcing {name!r}; available: {', '.join(FORCING_NAMES)}"
        )
    base = _LIBRARY[name]
    placed = StructuredForcing(
        row=n if row is None else row, f=base.f, f_t_derivs=base.f_t_derivs, name=base.name
    )
    return ForcingSpec.from_structured(n, placed)

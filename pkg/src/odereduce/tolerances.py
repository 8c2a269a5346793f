"""Central numeric tolerance configuration.

Every invariant check in the toolkit pulls its thresholds from one record so
tests, demos, the service and the CLI agree on what "equal" means.  The
relative tolerance may be overridden through the ``CHZ_TOLERANCE`` environment
variable (a decimal string such as ``"1e-9"``).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import InputFormatError

ENV_TOLERANCE = "CHZ_TOLERANCE"


@dataclass(frozen=True)
class Tolerances:
    absolute: float = 1e-10
    relative: float = 1e-8
    # eigenvector-matrix condition number above which a matrix is treated as defective
    defective_cond: float = 1e8
    # quadrature panel doubling stops once successive refinements agree this well
    quadrature: float = 1e-8
    # state-norm threshold at which an integration is declared blown up
    blowup: float = 1e12

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None) -> "Tolerances":
        env = os.environ if environ is None else environ
        raw = env.get(ENV_TOLERANCE)
        if raw is None:
            return cls()
        try:
            rel = float(raw)
        except ValueError as exc:
            raise InputFormatError(f"{ENV_TOLERANCE} is not a decimal string: {raw!r}") from exc
        if not rel > 0.0:
            raise InputFormatError(f"{ENV_TOLERANCE} must be positive, got {raw!r}")
        return cls(relative=rel)


DEFAULT = Tolerances()

"""Wire formats: complex literals, matrix JSON, reduced-equation JSON, trajectory CSV.

Complex values cross every boundary as strings of the form ``a``, ``a+bi`` or
``a-bi`` with dot-decimal (optionally exponent-bearing) components.  Floats are
emitted with ``repr``, the shortest representation that round-trips exactly,
so serialize -> parse is lossless and byte-deterministic.
"""

from __future__ import annotations

import json
import re
from typing import Any

import numpy as np

from .errors import InputFormatError
from .linalg import as_matrix, as_vector
from .reduction import ReducedEquation
from .simulate import Trajectory

_FLOAT = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^\s*(?P<re>{_FLOAT})(?:(?P<sign>[+-])(?P<im>{_FLOAT})i)?\s*$")


def parse_complex(text: str) -> complex:
    if not isinstance(text, str):
        raise InputFormatError(f"complex literal must be a string, got {type(text).__name__}")
    m = _COMPLEX_RE.match(text)
    if m is None:
        raise InputFormatError(f"malformed complex literal: {text!r}")
    re_part = float(m.group("re"))
    if m.group("im") is None:
        return complex(re_part, 0.0)
    im_part = float(m.group("im"))
    if m.group("sign") == "-":
        im_part = -im_part
    return complex(re_part, im_part)


def format_complex(z: complex) -> str:
    z = complex(z)
    re_part = z.real + 0.0  # fold -0.0 into 0.0
    im_part = z.imag + 0.0
    if im_part == 0.0:
        return repr(re_part)
    if im_part > 0:
        return f"{re_part!r}+{im_part!r}i"
    return f"{re_part!r}-{(-im_part)!r}i"


def parse_matrix(payload: Any) -> np.ndarray:
    """Matrix JSON object {"n": int, "entries": [[str, ...], ...]} -> array."""
    if not isinstance(payload, dict):
        raise InputFormatError("matrix payload must be a JSON object")
    try:
        n = payload["n"]
        entries = payload["entries"]
    except KeyError as exc:
        raise InputFormatError(f"matrix payload missing field {exc}") from exc
    if not isinstance(n, int) or n < 1:
        raise InputFormatError(f"matrix dimension must be a positive integer, got {n!r}")
    if not isinstance(entries, list) or len(entries) != n:
        raise InputFormatError(f"matrix needs exactly {n} rows")
    rows = []
    for row in entries:
        if not isinstance(row, list) or len(row) != n:
            raise InputFormatError(f"every matrix row needs exactly {n} entries")
        rows.append([parse_complex(e) for e in row])
    return as_matrix(rows)


def matrix_payload(mat: np.ndarray) -> dict:
    mat = as_matrix(mat)
    n = mat.shape[0]
    return {
        "n": n,
        "entries": [[format_complex(mat[i, j]) for j in range(n)] for i in range(n)],
    }


def parse_vector(items: Any, n: int | None = None) -> np.ndarray:
    if isinstance(items, str):
        items = [p for p in items.split(",") if p.strip() != ""]
    if not isinstance(items, list) or not items:
        raise InputFormatError("vector must be a non-empty list of complex literals")
    return as_vector([parse_complex(e) for e in items], n)


def vector_payload(vec: np.ndarray) -> list[str]:
    return [format_complex(z) for z in np.asarray(vec, dtype=complex)]


def reduced_equation_payload(eq: ReducedEquation) -> dict:
    return {
        "n": eq.n,
        "a": [format_complex(c) for c in eq.a.coeffs],
        "operators": [matrix_payload(m) for m in eq.operators.matrices],
        "rhs_operator": matrix_payload(eq.rhs_operator),
    }


def dump_json(payload: Any) -> str:
    """Deterministic JSON: insertion-ordered fields, shortest-round-trip floats."""
    return json.dumps(payload, ensure_ascii=False, separators=(", ", ": "), allow_nan=False)


def trajectory_csv(traj: Trajectory) -> str:
    """CSV with header t,re(x1),im(x1),...,re(xn),im(xn) at 17 significant digits."""
    n = traj.n
    header = "t," + ",".join(f"re(x{i+1}),im(x{i+1})" for i in range(n))
    lines = [header]
    for t, state in zip(traj.t, traj.states):
        cells = [f"{float(t):.17g}"]
        for z in state:
            cells.append(f"{z.real:.17g}")
            cells.append(f"{z.imag:.17g}")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def load_matrix_file(path: str) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read matrix file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"matrix file {path} is not valid JSON: {exc}") from exc
    return parse_matrix(payload)

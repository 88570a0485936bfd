"""Core matrix types, residual evaluation, norms and JSON matrix I/O.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to share across threads.  The residual
is computed exactly; ``is_solvent`` is the single tolerance gate the rest of
the package relies on.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, IoError, ParseError

__all__ = [
    "TolerancePolicy",
    "QmeProblem",
    "as_matrix",
    "frobenius",
    "subordinate_norm",
    "residual",
    "is_solvent",
    "matrix_from_json",
    "matrix_to_json",
    "load_matrix",
    "store_matrix",
]


def as_matrix(data, *, square: bool = False, name: str = "matrix") -> np.ndarray:
    """Validate ``data`` as a dense complex matrix and return a frozen copy.

    The result is a read-only C-ordered ``complex128`` array.  Non-2D input
    (or non-square when ``square=True``) raises DimensionMismatch; NaN or
    infinite entries raise ParseError.
    """
    try:
        m = np.array(data, dtype=np.complex128, order="C")
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{name}: not interpretable as a complex matrix: {exc}") from None
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionMismatch(f"{name}: expected a 2-D matrix, got shape {m.shape}")
    if not (np.isfinite(m.real).all() and np.isfinite(m.imag).all()):
        raise ParseError(f"{name}: non-finite entries are not accepted")
    if square and m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name}: expected a square matrix, got shape {m.shape}")
    m.flags.writeable = False
    return m


@dataclass(frozen=True)
class TolerancePolicy:
    """Relative tolerances for residual gates, rank decisions and eigenvalue clustering."""

    rel_residual: float = 1e-9
    rank_rel: float = 1e-10
    eig_cluster_rel: float = 1e-8

    def __post_init__(self) -> None:
        for name in ("rel_residual", "rank_rel", "eig_cluster_rel"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie strictly in (0, 1), got {value!r}")


@dataclass(frozen=True)
class QmeProblem:
    """A quadratic matrix equation X^2 - L1 X - L0 = 0 in canonical form."""

    l0: np.ndarray
    l1: np.ndarray
    tol: TolerancePolicy = field(default_factory=TolerancePolicy)
    n: int = field(init=False)

    def __post_init__(self) -> None:
        l0 = as_matrix(self.l0, square=True, name="l0")
        l1 = as_matrix(self.l1, square=True, name="l1")
        if l0.shape != l1.shape:
            raise DimensionMismatch(f"l0 is {l0.shape} but l1 is {l1.shape}")
        object.__setattr__(self, "l0", l0)
        object.__setattr__(self, "l1", l1)
        object.__setattr__(self, "n", l0.shape[0])


def frobenius(m) -> float:
    """Frobenius norm, used throughout for residual gates."""
    a = np.asarray(m)
    return math.sqrt(float(np.vdot(a, a).real))


def subordinate_norm(m) -> float:
    """Induced 2-norm (largest singular value) of a square matrix."""
    a = as_matrix(m, square=True, name="m")
    return float(np.linalg.norm(a, 2))


def _operand(problem: QmeProblem, x, name: str = "x") -> np.ndarray:
    a = as_matrix(x, square=True, name=name)
    if a.shape != problem.l0.shape:
        raise DimensionMismatch(
            f"{name} is {a.shape} but the equation has dimension {problem.n}"
        )
    return a


def residual(problem: QmeProblem, x) -> np.ndarray:
    """Exact residual X^2 - L1 X - L0; no tolerance is applied here."""
    a = _operand(problem, x)
    return a @ a - problem.l1 @ a - problem.l0


def _gate(
    problem: QmeProblem,
    a: np.ndarray,
    norm_l0: float | None = None,
    norm_l1: float | None = None,
) -> tuple[bool, float]:
    """Residual gate for an already-validated operand (no defensive copies).

    The coefficient norms may be passed in when the caller evaluates many
    candidates against one equation.
    """
    rnorm = frobenius(a @ a - problem.l1 @ a - problem.l0)
    nx = frobenius(a)
    if norm_l0 is None:
        norm_l0 = frobenius(problem.l0)
    if norm_l1 is None:
        norm_l1 = frobenius(problem.l1)
    scale = 1.0 + norm_l0 + norm_l1 * nx + nx * nx
    return rnorm <= problem.tol.rel_residual * scale, rnorm


def is_solvent(problem: QmeProblem, x) -> tuple[bool, float]:
    """Residual gate: ``(passes, raw Frobenius norm of the residual)``.

    The threshold scales with the magnitudes of L0, L1 X and X^2, so the
    verdict is invariant under a rescaling of the whole equation.
    """
    return _gate(problem, _operand(problem, x))


def matrix_to_json(m) -> dict:
    """Matrix as the on-disk JSON payload {"rows", "cols", "data"} (row-major [re, im] pairs)."""
    a = as_matrix(m, name="m")
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in a.ravel(order="C")],
    }


def matrix_from_json(payload, name: str = "matrix") -> np.ndarray:
    """Inverse of :func:`matrix_to_json`; raises ParseError on any schema violation."""
    if not isinstance(payload, dict):
        raise ParseError(f"{name}: expected a JSON object")
    rows = payload.get("rows")
    cols = payload.get("cols")
    data = payload.get("data")
    if not isinstance(rows, int) or not isinstance(cols, int) or isinstance(rows, bool) or isinstance(cols, bool):
        raise ParseError(f"{name}: 'rows' and 'cols' must be integers")
    if rows < 1 or cols < 1:
        raise ParseError(f"{name}: 'rows' and 'cols' must be positive")
    if not isinstance(data, list):
        raise ParseError(f"{name}: 'data' must be a list of [re, im] pairs")
    if len(data) != rows * cols:
        raise ParseError(
            f"{name}: 'data' has {len(data)} entries, expected rows*cols = {rows * cols}"
        )
    values = np.empty(rows * cols, dtype=np.complex128)
    for k, item in enumerate(data):
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 2
            or any(isinstance(part, bool) or not isinstance(part, (int, float)) for part in item)
        ):
            raise ParseError(f"{name}: data[{k}] is not a [re, im] number pair")
        values[k] = complex(item[0], item[1])
    if not (np.isfinite(values.real).all() and np.isfinite(values.imag).all()):
        raise ParseError(f"{name}: non-finite entries are not accepted")
    return as_matrix(values.reshape(rows, cols), name=name)


def load_matrix(path) -> np.ndarray:
    """Read a matrix from the JSON file format; ParseError/IoError on failure."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from None
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None
    return matrix_from_json(payload, name=str(path))


def store_matrix(m, path) -> None:
    """Write a matrix in the JSON file format at full precision.

    Storing and re-loading reproduces the matrix bit-exactly: floats are
    serialized with Python's shortest round-trip representation.
    """
    payload = matrix_to_json(m)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
            fh.write("\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from None

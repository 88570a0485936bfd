"""Reductions of Riccati-type and bilateral quadratic matrix equations to the
canonical form X^2 - L1 X - L0 = 0, with affine back-maps for solutions.

Supported source forms, all over square complex matrices of one dimension:

    Riccati    Z A Z + B Z + Z C + D = 0        (A invertible)
    bilateral  Y^2 + T1 Y + Y T1' + T0 = 0
    left       Y^2 + Y T1' + T0 = 0             (T1 = 0)
    symmetric  Y^2 + T1 Y + Y T1 + T0 = 0       (T1' = T1)

The source equation and its canonical form are simultaneously possible or
impossible, and solutions correspond one-to-one through the stored back-map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import QmeProblem, TolerancePolicy, as_matrix
from .errors import DimensionMismatch, SingularA
from .spectral import SolventSet, enumerate_solvents

__all__ = [
    "RiccatiProblem",
    "ReductionTrace",
    "riccati_residual",
    "bqme_residual",
    "sbqme_residual",
    "reduce_riccati",
    "reduce_bqme",
    "solve_sbqme",
]


@dataclass(frozen=True)
class RiccatiProblem:
    """Equation Z A Z + B Z + Z C + D = 0 over n x n complex matrices."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    def __post_init__(self) -> None:
        mats = {}
        for name in ("a", "b", "c", "d"):
            mats[name] = as_matrix(getattr(self, name), square=True, name=name)
        shapes = {m.shape for m in mats.values()}
        if len(shapes) != 1:
            raise DimensionMismatch(f"coefficients differ in shape: {sorted(shapes)}")
        for name, m in mats.items():
            object.__setattr__(self, name, m)


@dataclass(frozen=True)
class ReductionTrace:
    """A canonical equation plus the affine map back to the source equation.

    A canonical solvent X maps to Y = -shift - X, then (when ``right_factor``
    is set) to Z = Y @ right_factor.  Applying :meth:`map_back` to any solvent
    of ``canonical`` yields a solution of the original equation.
    """

    canonical: QmeProblem
    shift: np.ndarray
    right_factor: np.ndarray | None
    description: str

    def map_back(self, x) -> np.ndarray:
        a = as_matrix(x, square=True, name="x")
        if a.shape != self.shift.shape:
            raise DimensionMismatch(
                f"x is {a.shape} but the reduction has dimension {self.shift.shape[0]}"
            )
        y = -self.shift - a
        return y if self.right_factor is None else y @ self.right_factor


def riccati_residual(problem: RiccatiProblem, z) -> np.ndarray:
    """Exact residual Z A Z + B Z + Z C + D."""
    m = as_matrix(z, square=True, name="z")
    if m.shape != problem.a.shape:
        raise DimensionMismatch(f"z is {m.shape} but the equation is {problem.a.shape}")
    return m @ problem.a @ m + problem.b @ m + m @ problem.c + problem.d


def bqme_residual(l1t, l1pt, l0t, y) -> np.ndarray:
    """Exact residual Y^2 + T1 Y + Y T1' + T0 of the bilateral equation."""
    t1, t1p, t0 = _triple(l1t, l1pt, l0t)
    m = as_matrix(y, square=True, name="y")
    if m.shape != t1.shape:
        raise DimensionMismatch(f"y is {m.shape} but the equation is {t1.shape}")
    return m @ m + t1 @ m + m @ t1p + t0


def sbqme_residual(l1t, l0t, y) -> np.ndarray:
    """Exact residual of the symmetric bilateral equation (T1' = T1)."""
    return bqme_residual(l1t, l1t, l0t, y)


def _triple(l1t, l1pt, l0t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    t1 = as_matrix(l1t, square=True, name="l1t")
    t1p = as_matrix(l1pt, square=True, name="l1pt")
    t0 = as_matrix(l0t, square=True, name="l0t")
    if not (t1.shape == t1p.shape == t0.shape):
        raise DimensionMismatch("bilateral coefficients differ in shape")
    return t1, t1p, t0


def reduce_bqme(l1t, l1pt, l0t, tol: TolerancePolicy | None = None) -> ReductionTrace:
    """Canonical form of the bilateral equation via the shift X = -T1' - Y.

    Canonical coefficients: L1 = T1 - T1' and L0 = T1 T1' - T0.  With T1 = 0
    (the left equation) this collapses to L1 = -T1', L0 = -T0.
    """
    t1, t1p, t0 = _triple(l1t, l1pt, l0t)
    canonical = QmeProblem(l0=t1 @ t1p - t0, l1=t1 - t1p, tol=tol or TolerancePolicy())
    return ReductionTrace(
        canonical=canonical,
        shift=t1p,
        right_factor=None,
        description="Y = -l1pt - X",
    )


def reduce_riccati(problem: RiccatiProblem, tol: TolerancePolicy | None = None) -> ReductionTrace:
    """Canonical form of Z A Z + B Z + Z C + D = 0.

    The substitution Z = Y A^-1 produces a bilateral equation with T1 = B,
    T1' = A^-1 C A and T0 = D A, which is then shifted to canonical form.
    Raises SingularA when A fails the singular-value gate.
    """
    tol = tol or TolerancePolicy()
    sv = np.linalg.svd(problem.a, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= tol.rank_rel * sv[0]:
        raise SingularA("A is numerically singular; the substitution Z = Y A^-1 is unavailable")
    ainv = np.linalg.inv(problem.a)
    base = reduce_bqme(
        problem.b,
        ainv @ problem.c @ problem.a,
        problem.d @ problem.a,
        tol,
    )
    return ReductionTrace(
        canonical=base.canonical,
        shift=base.shift,
        right_factor=ainv,
        description="Z = (-l1pt - X) A^-1",
    )


def solve_sbqme(l1t, l0t, tol: TolerancePolicy | None = None) -> SolventSet:
    """All diagonalizable solutions of the symmetric bilateral equation.

    With T1' = T1 the canonical form is the square-root equation
    X^2 = T1^2 - T0, enumerated as solvents of the equation with L1 = 0 (sign
    choices per eigenvalue); each root maps back through Y = -T1 - X.
    Non-diagonalizable root families are only signaled through
    ``infinite_family_flag``.
    """
    t1 = as_matrix(l1t, square=True, name="l1t")
    t0 = as_matrix(l0t, square=True, name="l0t")
    if t1.shape != t0.shape:
        raise DimensionMismatch("l1t and l0t differ in shape")
    target = t1 @ t1 - t0
    canonical = QmeProblem(
        l0=target,
        l1=np.zeros_like(target),
        tol=tol or TolerancePolicy(),
    )
    roots = enumerate_solvents(canonical)
    mapped = []
    for x in roots.solvents:
        y = -t1 - x
        y.flags.writeable = False
        mapped.append(y)
    return SolventSet(
        solvents=tuple(mapped),
        candidates_tried=roots.candidates_tried,
        haar_satisfied=roots.haar_satisfied,
        infinite_family_flag=roots.infinite_family_flag,
        diagnostics=roots.diagnostics,
    )

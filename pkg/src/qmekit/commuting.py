"""Chebyshev closed forms for the linearization coefficients when the two
equation coefficients commute, plus the principal matrix square root.

With [L0, L1] = 0 the coefficients (alpha_p, beta_p) collapse to second-kind
Chebyshev polynomials evaluated at (1/2) L1 (-L0)^(-1/2), scaled by powers of
the principal square root of -L0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import QmeProblem, TolerancePolicy, as_matrix, frobenius, is_solvent
from .errors import NotASolvent, NotCommuting, NotDiagonalizable, SingularMatrix
from .symfun import AlphaBeta

__all__ = [
    "ChebyshevEval",
    "chebyshev_u",
    "chebyshev_u_matrix",
    "evaluate_chebyshev",
    "principal_sqrt",
    "alpha_beta_closed",
    "power_closed",
]

# Relative Frobenius bound on the commutator for the closed forms to apply.
COMMUTATOR_REL = 1e-10


def chebyshev_u(p: int, x):
    """Second-kind Chebyshev value U_p(x) by the three-term recurrence.

    U_{p+1} = 2x U_p - U_{p-1} with U_0 = 1, U_1 = 2x; U_{-1} = 0 is allowed
    so single-period boundaries are covered.  The result carries the type of
    ``x`` (exact for integers, complex for complex arguments).
    """
    if p < -1:
        raise ValueError("p must be >= -1")
    prev, cur = 0 * x, 1 + 0 * x
    if p == -1:
        return prev
    for _ in range(p):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def chebyshev_u_matrix(p: int, m) -> np.ndarray:
    """U_p evaluated at a square matrix argument by the same recurrence."""
    a = as_matrix(m, square=True, name="m")
    if p < -1:
        raise ValueError("p must be >= -1")
    n = a.shape[0]
    prev = np.zeros((n, n), dtype=np.complex128)
    if p == -1:
        return prev
    cur = np.eye(n, dtype=np.complex128)
    for _ in range(p):
        prev, cur = cur, 2.0 * (a @ cur) - prev
    return cur


@dataclass(frozen=True)
class ChebyshevEval:
    """A matrix Chebyshev evaluation: degree, argument and value."""

    p: int
    argument: np.ndarray
    value: np.ndarray


def evaluate_chebyshev(p: int, m) -> ChebyshevEval:
    """Package U_p(M) together with its degree and argument."""
    a = as_matrix(m, square=True, name="m")
    return ChebyshevEval(p, a, chebyshev_u_matrix(p, a))


def principal_sqrt(m, tol: TolerancePolicy | None = None) -> np.ndarray:
    """Principal square root of a diagonalizable, invertible matrix.

    Eigendecomposes M = V diag(lam) V^-1 and applies the principal branch
    sqrt(lam) (argument in (-pi, pi]).  Raises NotDiagonalizable when the
    eigenvector matrix is numerically singular and SingularMatrix when an
    eigenvalue is numerically zero (the closed forms downstream need the
    inverse of the root).
    """
    a = as_matrix(m, square=True, name="m")
    tol = tol or TolerancePolicy()
    try:
        lam, vec = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:
        raise NotDiagonalizable(f"eigendecomposition failed: {exc}") from None
    sv = np.linalg.svd(vec, compute_uv=False)
    if sv[-1] <= 0.0 or sv[0] / sv[-1] >= 1.0 / tol.rank_rel:
        raise NotDiagonalizable("eigenvector matrix is numerically singular")
    mags = np.abs(lam)
    if mags.max() == 0.0 or mags.min() <= tol.rank_rel * mags.max():
        raise SingularMatrix("numerically zero eigenvalue: no inverse square root")
    root = np.sqrt(lam.astype(np.complex128))
    return np.linalg.solve(vec.T, (vec * root).T).T


def _require_commuting(problem: QmeProblem) -> None:
    comm = problem.l0 @ problem.l1 - problem.l1 @ problem.l0
    bound = COMMUTATOR_REL * frobenius(problem.l0) * frobenius(problem.l1)
    gap = frobenius(comm)
    if gap > bound:
        raise NotCommuting(f"commutator norm {gap:.3e} exceeds the bound {bound:.3e}")


def alpha_beta_closed(problem: QmeProblem, p: int) -> AlphaBeta:
    """Closed Chebyshev form of (alpha_p, beta_p) for commuting coefficients.

    alpha_p = -(-L0)^(p/2) U_{p-2}(X) and beta_p = (-L0)^((p-1)/2) U_{p-1}(X)
    with X = (1/2) L1 (-L0)^(-1/2), for p >= 2; p in {0, 1} returns the exact
    boundary values.  Requires [L0, L1] = 0 within the commutator bound and an
    invertible principal square root of -L0.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    _require_commuting(problem)
    root = principal_sqrt(-problem.l0, problem.tol)
    n = problem.n
    eye = np.eye(n, dtype=np.complex128)
    zero = np.zeros((n, n), dtype=np.complex128)
    if p == 0:
        return AlphaBeta(0, eye, zero)
    if p == 1:
        return AlphaBeta(1, zero, eye)
    inv_root = np.linalg.solve(root, eye)
    arg = 0.5 * (problem.l1 @ inv_root)
    alpha = -np.linalg.matrix_power(root, p) @ chebyshev_u_matrix(p - 2, arg)
    beta = np.linalg.matrix_power(root, p - 1) @ chebyshev_u_matrix(p - 1, arg)
    return AlphaBeta(p, alpha, beta)


def power_closed(problem: QmeProblem, s, p: int) -> np.ndarray:
    """S^p from the closed Chebyshev coefficients.

    Same preconditions as :func:`alpha_beta_closed`, plus S must pass the
    residual gate.  Reduces to E and S at p = 0 and p = 1.
    """
    a = as_matrix(s, square=True, name="s")
    ok, rnorm = is_solvent(problem, a)
    if not ok:
        raise NotASolvent(f"s: residual norm {rnorm:.3e} exceeds the gate")
    ab = alpha_beta_closed(problem, p)
    return ab.beta @ a + ab.alpha

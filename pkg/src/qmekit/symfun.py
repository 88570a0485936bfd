"""Coefficient recursion, permutation-sum symbols, power linearization and
symmetric functions of solvent pairs.

The central objects are the matrices (alpha_p, beta_p), functions of the
equation coefficients alone, which linearize every solvent power:
S^p = beta_p S + alpha_p E.  They are computed by a two-term recursion; an
explicit permutation-sum evaluation is kept as an independent oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import QmeProblem, TolerancePolicy, as_matrix, frobenius, is_solvent
from .errors import DimensionMismatch, NotASolvent, NotComplete, SizeGuard
from .reconstruct import coefficients_from_pair, is_complete_pair

__all__ = [
    "MAX_WORD_LENGTH",
    "AlphaBeta",
    "PermSymbol",
    "perm_symbol",
    "perm_sum",
    "alpha_beta",
    "alpha_beta_oracle",
    "power_linearized",
    "power_sum",
    "mixed_sum",
    "elementary_sigma2",
    "elementary_pi2",
    "sigma_p",
    "pi_p",
    "check_girard_newton",
    "check_waring",
]

# Word enumeration is exponential; binom(20, 10) is the last tolerable size.
MAX_WORD_LENGTH = 20


@dataclass(frozen=True)
class AlphaBeta:
    """Coefficient pair (alpha_p, beta_p) with S^p = beta_p S + alpha_p E."""

    p: int
    alpha: np.ndarray
    beta: np.ndarray


@dataclass(frozen=True)
class PermSymbol:
    """Sum of all distinct orderings of u factors L0 and v factors L1.

    ``words`` counts the summed products, binom(u+v, min(u, v)).
    """

    u: int
    v: int
    value: np.ndarray
    words: int


def perm_symbol(problem: QmeProblem, u: int, v: int) -> PermSymbol:
    """Enumerate and sum every distinct word with u L0-factors and v L1-factors.

    Words are visited in a fixed lexicographic order (positions of the L0
    factors), so the floating-point sum is bit-stable.
    """
    if u < 0 or v < 0 or u + v < 1:
        raise ValueError("need u, v >= 0 with at least one factor")
    if u + v > MAX_WORD_LENGTH:
        raise SizeGuard(f"word length {u + v} exceeds the limit {MAX_WORD_LENGTH}")
    n = problem.n
    total = u + v
    value = np.zeros((n, n), dtype=np.complex128)
    words = 0
    for zero_slots in itertools.combinations(range(total), u):
        chosen = frozenset(zero_slots)
        acc = np.eye(n, dtype=np.complex128)
        for k in range(total):
            acc = acc @ (problem.l0 if k in chosen else problem.l1)
        value += acc
        words += 1
    return PermSymbol(u, v, value, words)


def perm_sum(problem: QmeProblem, u: int, v: int) -> np.ndarray:
    """Value of the permutation-sum symbol with u L0-factors and v L1-factors."""
    return perm_symbol(problem, u, v).value


def alpha_beta(problem: QmeProblem, p: int) -> AlphaBeta:
    """(alpha_p, beta_p) by the two-term recursion C_{k+2} = L0 C_k + L1 C_{k+1}.

    Boundary values alpha_0 = E, alpha_1 = 0 and beta_0 = 0, beta_1 = E;
    cost is linear in p.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    n = problem.n
    eye = np.eye(n, dtype=np.complex128)
    zero = np.zeros((n, n), dtype=np.complex128)
    alpha_k, alpha_next = eye, zero
    beta_k, beta_next = zero, eye
    for _ in range(p):
        alpha_k, alpha_next = alpha_next, problem.l0 @ alpha_k + problem.l1 @ alpha_next
        beta_k, beta_next = beta_next, problem.l0 @ beta_k + problem.l1 @ beta_next
    return AlphaBeta(p, alpha_k, beta_k)


def _symbol_value(problem: QmeProblem, u: int, v: int) -> np.ndarray:
    # The empty symbol (no factors) is the identity.
    if u == 0 and v == 0:
        return np.eye(problem.n, dtype=np.complex128)
    return perm_sum(problem, u, v)


def alpha_beta_oracle(problem: QmeProblem, p: int) -> AlphaBeta:
    """(alpha_p, beta_p) from the explicit permutation sums; exponential cost.

    alpha_p = sum_t {L0^(t) L1^(p-2-2t)} L0 for p >= 2 and
    beta_p  = sum_t {L0^(t) L1^(p-1-2t)} for p >= 1, with the boundary values
    at p in {0, 1}.  Kept independent of :func:`alpha_beta` as a cross-check.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    if p > MAX_WORD_LENGTH:
        raise SizeGuard(f"p = {p} exceeds the word-enumeration limit {MAX_WORD_LENGTH}")
    n = problem.n
    eye = np.eye(n, dtype=np.complex128)
    if p == 0:
        return AlphaBeta(0, eye, np.zeros((n, n), dtype=np.complex128))
    alpha = np.zeros((n, n), dtype=np.complex128)
    if p >= 2:
        for t in range((p - 2) // 2 + 1):
            alpha += _symbol_value(problem, t, p - 2 - 2 * t) @ problem.l0
    beta = np.zeros((n, n), dtype=np.complex128)
    for t in range((p - 1) // 2 + 1):
        beta += _symbol_value(problem, t, p - 1 - 2 * t)
    return AlphaBeta(p, alpha, beta)


def _require_solvent(problem: QmeProblem, s, name: str) -> np.ndarray:
    a = as_matrix(s, square=True, name=name)
    ok, rnorm = is_solvent(problem, a)
    if not ok:
        raise NotASolvent(f"{name}: residual norm {rnorm:.3e} exceeds the gate")
    return a


def power_linearized(problem: QmeProblem, s, p: int) -> np.ndarray:
    """S^p evaluated as beta_p S + alpha_p E; S must pass the residual gate."""
    a = _require_solvent(problem, s, "s")
    ab = alpha_beta(problem, p)
    return ab.beta @ a + ab.alpha


def power_sum(problem: QmeProblem, solvents, p: int) -> np.ndarray:
    """Sum of S_i^p over r solvents, as beta_p (sum S_i) + r alpha_p E."""
    mats = [_require_solvent(problem, s, f"solvents[{i}]") for i, s in enumerate(solvents)]
    if not mats:
        raise ValueError("need at least one solvent")
    ab = alpha_beta(problem, p)
    return ab.beta @ np.add.reduce(mats) + len(mats) * ab.alpha


def mixed_sum(problem: QmeProblem, solvents, p: int) -> np.ndarray:
    """Sum over i < j of S_i^p S_j + S_j^p S_i, linearized through (alpha_p, beta_p).

    Evaluated as beta_p Pi_1 + (r-1) alpha_p Sig_1 where
    Pi_1 = sum_{i<j} (S_i S_j + S_j S_i) and Sig_1 = sum_i S_i.
    """
    mats = [_require_solvent(problem, s, f"solvents[{i}]") for i, s in enumerate(solvents)]
    if len(mats) < 2:
        raise ValueError("need at least two solvents")
    ab = alpha_beta(problem, p)
    sig1 = np.add.reduce(mats)
    pi1 = np.zeros_like(sig1)
    for x, y in itertools.combinations(mats, 2):
        pi1 += x @ y + y @ x
    return ab.beta @ pi1 + (len(mats) - 1) * (ab.alpha @ sig1)


def _complete(s1, s2, tol: TolerancePolicy | None) -> tuple[np.ndarray, np.ndarray]:
    a = as_matrix(s1, square=True, name="s1")
    b = as_matrix(s2, square=True, name="s2")
    if a.shape != b.shape:
        raise DimensionMismatch(f"s1 is {a.shape} but s2 is {b.shape}")
    if not is_complete_pair(a, b, tol):
        raise NotComplete("s1 - s2 is singular")
    return a, b


def _rdiv(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    return np.linalg.solve(d.T, a.T).T


def sigma_p(s1, s2, p: int, tol: TolerancePolicy | None = None) -> np.ndarray:
    """Sig_p = (S1^p - S2^p)(S1 - S2)^-1; equals beta_p of the pair's equation.

    Invariant under argument swap and across complete pairs drawn from the
    same solvent set.
    """
    a, b = _complete(s1, s2, tol)
    if p < 0:
        raise ValueError("p must be >= 0")
    return _rdiv(np.linalg.matrix_power(a, p) - np.linalg.matrix_power(b, p), a - b)


def pi_p(s1, s2, p: int, tol: TolerancePolicy | None = None) -> np.ndarray:
    """Pi_p = S1^p (S1-S2)^-1 S2 - S2^p (S1-S2)^-1 S1; equals -alpha_p."""
    a, b = _complete(s1, s2, tol)
    if p < 0:
        raise ValueError("p must be >= 0")
    d = a - b
    return _rdiv(np.linalg.matrix_power(a, p), d) @ b - _rdiv(np.linalg.matrix_power(b, p), d) @ a


def elementary_sigma2(s1, s2, tol: TolerancePolicy | None = None) -> np.ndarray:
    """The sum-like elementary symmetric function Sig_2; equals L1 of the pair's equation."""
    return sigma_p(s1, s2, 2, tol)


def elementary_pi2(s1, s2, tol: TolerancePolicy | None = None) -> np.ndarray:
    """The product-like elementary symmetric function Pi_2; equals -L0 of the pair's equation."""
    return pi_p(s1, s2, 2, tol)


def check_girard_newton(s1, s2, tol: TolerancePolicy | None = None) -> float:
    """Frobenius residual of S1^2 + S2^2 = Sig_2 (S1 + S2) - 2 Pi_2.

    The matrix Girard-Newton identity; near zero for genuine complete
    solvent pairs.
    """
    a, b = _complete(s1, s2, tol)
    sig = elementary_sigma2(a, b, tol)
    pi = elementary_pi2(a, b, tol)
    return frobenius(a @ a + b @ b - (sig @ (a + b) - 2.0 * pi))


def check_waring(s1, s2, p: int, tol: TolerancePolicy | None = None) -> float:
    """Frobenius residual of S1^p + S2^p = beta_p (S1 + S2) + 2 alpha_p E.

    The matrix Waring identity, with (alpha_p, beta_p) rebuilt from the
    pair's reconstructed equation.
    """
    a, b = _complete(s1, s2, tol)
    l1, l0 = coefficients_from_pair(a, b, tol)
    ab = alpha_beta(QmeProblem(l0=l0, l1=l1, tol=tol or TolerancePolicy()), p)
    lhs = np.linalg.matrix_power(a, p) + np.linalg.matrix_power(b, p)
    return frobenius(lhs - ab.beta @ (a + b) - 2.0 * ab.alpha)

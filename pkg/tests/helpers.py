"""Shared generators and brute-force oracles for the test suite.

Oracles here are deliberately independent of the library implementations
they are used to check (explicit sums, direct matrix powers, enumeration).
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from qmekit import QmeProblem, is_complete_pair


def rand_complex(rng: np.random.Generator, n: int, m: int | None = None, scale: float = 1.0):
    m = n if m is None else m
    return scale * (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m)))


def random_complete_pair(rng: np.random.Generator, n: int, max_tries: int = 100):
    for _ in range(max_tries):
        s1 = rand_complex(rng, n)
        s2 = rand_complex(rng, n)
        if is_complete_pair(s1, s2):
            return s1, s2
    raise AssertionError("could not draw a complete pair")


def random_diagonalizable(
    rng: np.random.Generator,
    n: int,
    *,
    radius: tuple[float, float] = (0.5, 2.0),
    cond_max: float = 50.0,
    max_tries: int = 200,
):
    """V diag(lam) V^-1 with eigenvalue moduli in ``radius`` and bounded cond(V)."""
    lo, hi = radius
    for _ in range(max_tries):
        v = rand_complex(rng, n)
        sv = np.linalg.svd(v, compute_uv=False)
        if sv[-1] == 0.0 or sv[0] / sv[-1] > cond_max:
            continue
        lam = rng.uniform(lo, hi, size=n) * np.exp(1j * rng.uniform(-np.pi, np.pi, size=n))
        return (v * lam) @ np.linalg.inv(v), lam, v
    raise AssertionError("could not draw a diagonalizable matrix")


def random_commuting_problem(rng: np.random.Generator, n: int, max_tries: int = 500) -> QmeProblem:
    """Commuting (L0, L1) as quadratic polynomials in one diagonalizable matrix.

    Resamples until the instance is numerically well posed for the closed
    forms: -L0 keeps eigenvalue moduli in [0.05, 6] with a separated,
    well-conditioned eigensystem (the quadratic can fold distinct eigenvalues
    of M onto nearly equal ones, making the eigenvectors of the non-normal L0
    nearly parallel), and the Chebyshev argument (1/2) L1 (-L0)^(-1/2) keeps
    its spectrum inside |x| <= 2.5 so recurrence intermediates cannot dwarf
    the final products.
    """
    for _ in range(max_tries):
        m, _, _ = random_diagonalizable(rng, n)
        c = rand_complex(rng, 3, 1).ravel() * 0.5
        d = rand_complex(rng, 3, 1).ravel() * 0.5
        eye = np.eye(n)
        l0 = c[0] * eye + c[1] * m + c[2] * (m @ m)
        l1 = d[0] * eye + d[1] * m + d[2] * (m @ m)
        lam, vec = np.linalg.eig(-l0)
        mags = np.abs(lam)
        if mags.min() < 0.05 or mags.max() > 6.0:
            continue
        gaps = np.abs(lam[:, None] - lam[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() < 1e-2 * mags.max():
            continue
        sv = np.linalg.svd(vec, compute_uv=False)
        if sv[0] / sv[-1] > 200.0:
            continue
        root = (vec * np.sqrt(lam)) @ np.linalg.inv(vec)
        arg = 0.5 * l1 @ np.linalg.inv(root)
        if np.abs(np.linalg.eigvals(arg)).max() > 2.5:
            continue
        return QmeProblem(l0=l0, l1=l1)
    raise AssertionError("could not draw a commuting problem")


def superdiag_shift(n: int) -> np.ndarray:
    """Nilpotent matrix with ones on the first superdiagonal."""
    return np.diag(np.ones(n - 1), 1).astype(complex)


def no_solvent_problem(n: int) -> QmeProblem:
    """X^2 - 2E X - L0 = 0 with L0 = -E + superdiagonal ones.

    Rewrites as (X - E)^2 = nilpotent single-block matrix, which has no
    square root for n >= 2, so the equation has no solvents at all.
    """
    return QmeProblem(l0=-np.eye(n) + superdiag_shift(n), l1=2.0 * np.eye(n))


def incompatible_triangular_pair(n: int):
    """Upper-triangular all-twos pattern and its negated transpose.

    S1 - S2 has rank one while S1^2 - S2^2 does not, so no equation admits
    both as solvents.
    """
    s1 = (np.eye(n) + np.triu(2.0 * np.ones((n, n)), 1)).astype(complex)
    s2 = -s1.T.copy()
    return s1, s2


def near_identity_diag_pair(n: int):
    """diag(1, ..., 1, 3) and diag(1, ..., 1, 2): a non-complete pair that is
    a solvent pair of infinitely many equations."""
    s1 = np.eye(n, dtype=complex)
    s1[n - 1, n - 1] = 3.0
    s2 = np.eye(n, dtype=complex)
    s2[n - 1, n - 1] = 2.0
    return s1, s2


def chebyshev_u_sum(p: int, x):
    """Explicit-sum second-kind Chebyshev value, independent of the recurrence."""
    total = 0 * x
    for m in range(p // 2 + 1):
        coeff = (-1) ** m * (
            math.factorial(p - m) // (math.factorial(m) * math.factorial(p - 2 * m))
        )
        total = total + coeff * (2 * x) ** (p - 2 * m)
    return total


def chebyshev_u_sum_matrix(p: int, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    total = np.zeros((n, n), dtype=complex)
    for m in range(p // 2 + 1):
        coeff = (-1) ** m * (
            math.factorial(p - m) // (math.factorial(m) * math.factorial(p - 2 * m))
        )
        total += coeff * np.linalg.matrix_power(2.0 * a, p - 2 * m)
    return total


def direct_power_sum(mats, p: int) -> np.ndarray:
    total = np.zeros_like(mats[0])
    for s in mats:
        total = total + np.linalg.matrix_power(s, p)
    return total


def direct_mixed_sum(mats, p: int) -> np.ndarray:
    """Brute-force sum over i < j of S_i^p S_j + S_j^p S_i."""
    total = np.zeros_like(mats[0])
    for x, y in itertools.combinations(mats, 2):
        total = total + np.linalg.matrix_power(x, p) @ y + np.linalg.matrix_power(y, p) @ x
    return total


def random_unit_cell_coeffs(rng: np.random.Generator):
    """(t, r) on the constraint circle |r|^2 + |t|^2 = 1, away from t = 0."""
    theta = rng.uniform(0.05, np.pi / 2 - 0.05)
    t = np.cos(theta) * np.exp(1j * rng.uniform(-np.pi, np.pi))
    r = np.sin(theta) * np.exp(1j * rng.uniform(-np.pi, np.pi))
    return complex(t), complex(r)

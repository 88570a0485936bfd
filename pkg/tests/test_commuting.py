"""Chebyshev recurrences, the principal square root and the commuting-case
closed forms."""

from __future__ import annotations

import numpy as np
import pytest
from helpers import (
    chebyshev_u_sum,
    chebyshev_u_sum_matrix,
    rand_complex,
    random_commuting_problem,
    random_diagonalizable,
)

from qmekit import (
    NotCommuting,
    NotDiagonalizable,
    QmeProblem,
    SingularMatrix,
    alpha_beta,
    alpha_beta_closed,
    chebyshev_u,
    chebyshev_u_matrix,
    evaluate_chebyshev,
    frobenius,
    power_closed,
    power_linearized,
    principal_sqrt,
)


def test_chebyshev_low_degrees():
    for x in (0.3, -1.2, 0.5 + 0.25j):
        assert chebyshev_u(-1, x) == 0
        assert chebyshev_u(0, x) == 1
        assert chebyshev_u(1, x) == pytest.approx(2 * x)
        assert chebyshev_u(2, x) == pytest.approx(4 * x**2 - 1)
        assert chebyshev_u(3, x) == pytest.approx(8 * x**3 - 4 * x)


def test_chebyshev_sine_identity():
    beta = np.pi / 5
    for n in range(1, 9):
        expected = np.sin(n * beta) / np.sin(beta)
        assert chebyshev_u(n - 1, np.cos(beta)) == pytest.approx(expected, abs=1e-13)


def test_chebyshev_matches_explicit_sum():
    for p in range(16):
        for x in (0.7, -0.4, 1.5, 0.2 + 0.9j):
            assert chebyshev_u(p, x) == pytest.approx(chebyshev_u_sum(p, x), rel=1e-10)


def test_chebyshev_matrix_diagonal_functoriality():
    m = np.diag([0.3, -0.8])
    for p in range(8):
        value = chebyshev_u_matrix(p, m)
        assert np.allclose(value, np.diag([chebyshev_u(p, 0.3), chebyshev_u(p, -0.8)]))


def test_chebyshev_matrix_matches_explicit_sum():
    rng = np.random.default_rng(0)
    a = rand_complex(rng, 3, scale=0.4)
    for p in range(16):
        value = chebyshev_u_matrix(p, a)
        expected = chebyshev_u_sum_matrix(p, a)
        assert frobenius(value - expected) <= 1e-10 * (1 + frobenius(expected))


def test_evaluate_chebyshev_record():
    m = np.diag([0.5, 0.1])
    record = evaluate_chebyshev(3, m)
    assert record.p == 3
    assert np.array_equal(record.argument, m)
    assert np.allclose(record.value, chebyshev_u_matrix(3, m))


def test_principal_sqrt_diagonal():
    assert np.allclose(principal_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))


def test_principal_sqrt_negative_axis_branch():
    root = principal_sqrt(np.array([[-4.0]]))
    assert root[0, 0] == pytest.approx(2j)


def test_principal_sqrt_jordan_block_fails():
    with pytest.raises(NotDiagonalizable):
        principal_sqrt(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_principal_sqrt_singular_fails():
    with pytest.raises(SingularMatrix):
        principal_sqrt(np.diag([0.0, 1.0]))


def test_principal_sqrt_squares_back():
    rng = np.random.default_rng(1)
    for n in (2, 3, 5):
        m, _, _ = random_diagonalizable(rng, n)
        root = principal_sqrt(m)
        assert frobenius(root @ root - m) <= 1e-9 * (1 + frobenius(m))


def test_alpha_beta_closed_second_order():
    rng = np.random.default_rng(2)
    problem = random_commuting_problem(rng, 3)
    ab = alpha_beta_closed(problem, 2)
    assert frobenius(ab.alpha - problem.l0) <= 1e-10 * (1 + frobenius(problem.l0))
    assert frobenius(ab.beta - problem.l1) <= 1e-10 * (1 + frobenius(problem.l1))


def test_alpha_beta_closed_scalar_pattern():
    # L1 = 0, L0 = -1: beta_p = U_{p-1}(0), the period-four pattern 1, 0, -1, 0.
    problem = QmeProblem(l0=np.array([[-1.0]]), l1=np.array([[0.0]]))
    pattern = [1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 0.0]
    for p, expected in enumerate(pattern, start=1):
        ab = alpha_beta_closed(problem, p)
        assert ab.beta[0, 0] == pytest.approx(expected, abs=1e-12)


def test_alpha_beta_closed_matches_recursion():
    rng = np.random.default_rng(3)
    for n in (2, 3):
        for _ in range(10):
            problem = random_commuting_problem(rng, n)
            for p in range(11):
                closed = alpha_beta_closed(problem, p)
                fast = alpha_beta(problem, p)
                assert frobenius(closed.alpha - fast.alpha) <= 1e-8 * (1 + frobenius(fast.alpha))
                assert frobenius(closed.beta - fast.beta) <= 1e-8 * (1 + frobenius(fast.beta))


def test_alpha_beta_closed_rejects_noncommuting():
    problem = QmeProblem(l0=np.array([[0.0, 0.0], [1.0, 0.0]]), l1=np.array([[1.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotCommuting):
        alpha_beta_closed(problem, 3)


def test_power_closed_boundaries():
    rng = np.random.default_rng(4)
    problem = random_commuting_problem(rng, 2)
    # Build a genuine solvent from the pencil: any matrix with residual zero.
    from qmekit import enumerate_solvents

    solvents = enumerate_solvents(problem).solvents
    assert solvents
    s = solvents[0]
    assert np.allclose(power_closed(problem, s, 0), np.eye(2))
    assert np.allclose(power_closed(problem, s, 1), s)


def test_power_closed_transfer_quadratic():
    # M^2 - 2 cos(beta) M + E = 0 collapses powers to the Chebyshev identity.
    beta = 0.7
    m = np.diag([np.exp(-1j * beta), np.exp(1j * beta)])
    problem = QmeProblem(l0=-np.eye(2), l1=2.0 * np.cos(beta) * np.eye(2))
    for n in (1, 2, 5, 8):
        expected = chebyshev_u(n - 1, np.cos(beta)) * m - chebyshev_u(n - 2, np.cos(beta)) * np.eye(2)
        assert np.allclose(power_closed(problem, m, n), expected, atol=1e-10)
        assert np.allclose(expected, np.linalg.matrix_power(m, n), atol=1e-10)


def test_power_closed_matches_direct_product():
    rng = np.random.default_rng(5)
    from qmekit import enumerate_solvents

    problem = random_commuting_problem(rng, 2)
    solvents = enumerate_solvents(problem).solvents
    assert solvents
    s = solvents[0]
    direct = np.linalg.matrix_power(s, 7)
    assert frobenius(power_closed(problem, s, 7) - direct) <= 1e-8 * (1 + frobenius(direct))
    assert frobenius(power_linearized(problem, s, 7) - direct) <= 1e-8 * (1 + frobenius(direct))

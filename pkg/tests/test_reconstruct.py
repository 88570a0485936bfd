"""Pair completeness, coefficient reconstruction and pair classification."""

from __future__ import annotations

import numpy as np
import pytest
from helpers import (
    incompatible_triangular_pair,
    near_identity_diag_pair,
    rand_complex,
    random_complete_pair,
)

from qmekit import (
    NotComplete,
    PairKind,
    QmeProblem,
    classify_pair,
    coefficients_from_pair,
    is_complete_pair,
    is_solvent,
)


def test_complete_pair_examples():
    assert is_complete_pair(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
    s1, s2 = near_identity_diag_pair(4)
    assert not is_complete_pair(s1, s2)
    m = np.diag([1.0, 2.0])
    assert not is_complete_pair(m, m)


def test_coefficients_diag_example():
    l1, l0 = coefficients_from_pair(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
    assert np.allclose(l1, np.diag([4.0, 6.0]))
    assert np.allclose(l0, np.diag([-3.0, -8.0]))


def test_coefficients_commuting_pair():
    # Commuting solvents collapse to L1 = S1 + S2 and L0 = -S1 S2.
    rng = np.random.default_rng(2)
    m = rand_complex(rng, 3)
    s1 = m @ m + 2.0 * m
    s2 = m - np.eye(3)
    assert is_complete_pair(s1, s2)
    l1, l0 = coefficients_from_pair(s1, s2)
    assert np.allclose(l1, s1 + s2, atol=1e-10)
    assert np.allclose(l0, -s1 @ s2, atol=1e-10)


def test_coefficients_noncommuting_pair_residuals_vanish():
    s1 = np.array([[1.0, 1.0], [0.0, 2.0]])
    s2 = np.array([[3.0, 0.0], [1.0, 4.0]])
    l1, l0 = coefficients_from_pair(s1, s2)
    problem = QmeProblem(l0=l0, l1=l1)
    assert is_solvent(problem, s1)[0]
    assert is_solvent(problem, s2)[0]


def test_coefficients_requires_complete():
    s1, s2 = near_identity_diag_pair(3)
    with pytest.raises(NotComplete):
        coefficients_from_pair(s1, s2)


def test_classify_impossible_triangular_pair():
    for n in range(2, 7):
        s1, s2 = incompatible_triangular_pair(n)
        outcome = classify_pair(s1, s2)
        assert outcome.kind is PairKind.IMPOSSIBLE
        assert outcome.l1 is None and outcome.l0 is None


def test_classify_infinite_forced_entries():
    for n in range(2, 7):
        s1, s2 = near_identity_diag_pair(n)
        outcome = classify_pair(s1, s2)
        assert outcome.kind is PairKind.INFINITE
        assert abs(outcome.l1[n - 1, n - 1] - 5.0) <= 1e-10
        assert abs(outcome.l0[n - 1, n - 1] + 6.0) <= 1e-10
        # last column above the diagonal entry is forced to zero
        assert np.all(np.abs(outcome.l1[: n - 1, n - 1]) <= 1e-10)
        assert np.all(np.abs(outcome.l0[: n - 1, n - 1]) <= 1e-10)


def test_classify_infinite_family_members():
    rng = np.random.default_rng(9)
    for n in (2, 4):
        s1, s2 = near_identity_diag_pair(n)
        outcome = classify_pair(s1, s2)
        assert outcome.kind is PairKind.INFINITE
        for _ in range(5):
            z = rand_complex(rng, n)
            l1 = outcome.l1 + z @ outcome.freedom
            l0 = s1 @ s1 - l1 @ s1
            problem = QmeProblem(l0=l0, l1=l1)
            assert is_solvent(problem, s1)[0]
            assert is_solvent(problem, s2)[0]


def test_classify_unique_matches_coefficients():
    rng = np.random.default_rng(4)
    s1, s2 = random_complete_pair(rng, 3)
    outcome = classify_pair(s1, s2)
    assert outcome.kind is PairKind.UNIQUE
    l1, l0 = coefficients_from_pair(s1, s2)
    assert np.array_equal(outcome.l1, l1)
    assert np.array_equal(outcome.l0, l0)
    assert outcome.freedom is None


def test_classify_identical_matrices_infinite():
    # A single matrix is a solvent of infinitely many equations; the pair
    # (S, S) has full freedom.
    s = np.diag([1.0, 2.0])
    outcome = classify_pair(s, s)
    assert outcome.kind is PairKind.INFINITE
    assert np.allclose(outcome.freedom, np.eye(2))


def test_random_round_trip_residuals():
    rng = np.random.default_rng(12)
    for n in range(2, 7):
        for _ in range(20):
            s1, s2 = random_complete_pair(rng, n)
            l1, l0 = coefficients_from_pair(s1, s2)
            problem = QmeProblem(l0=l0, l1=l1)
            ok1, r1 = is_solvent(problem, s1)
            ok2, r2 = is_solvent(problem, s2)
            assert ok1 and ok2, (n, r1, r2)


def test_classify_deterministic():
    s1, s2 = near_identity_diag_pair(3)
    first = classify_pair(s1, s2)
    second = classify_pair(s1, s2)
    assert np.array_equal(first.l1, second.l1)
    assert np.array_equal(first.l0, second.l0)
    assert np.array_equal(first.freedom, second.freedom)


def test_disjoint_singular_directions_is_impossible():
    # Equal in one direction but incompatible curvature there: S1 - S2 kills
    # e1 while S1^2 - S2^2 does not.
    s1 = np.array([[1.0, 0.0], [1.0, 2.0]])
    s2 = np.array([[1.0, 0.0], [-1.0, -2.0]])
    outcome = classify_pair(s1, s2)
    assert outcome.kind is PairKind.IMPOSSIBLE

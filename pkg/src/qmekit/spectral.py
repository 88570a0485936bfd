"""Solvent search through companion linearization of the quadratic pencil.

The pencil Q(lam) = lam^2 E - L1 lam - L0 is linearized as the 2n x 2n block
companion matrix [[0, E], [L0, L1]]; diagonalizable solvents are assembled
from n-subsets of its eigenpairs and kept when the residual gate passes.
Enumeration is deterministic: subsets are visited in lexicographic index
order and the output order never depends on any parallel backend.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import QmeProblem, _gate, frobenius
from .errors import EigFailure, SizeGuard

__all__ = [
    "MAX_DIMENSION",
    "PencilEigenpairs",
    "CandidateDiagnostic",
    "SolventSet",
    "companion",
    "pencil_eigenpairs",
    "enumerate_solvents",
    "eisenfeld_predicts_solvents",
]

# binom(2n, n) explodes quickly; refuse anything beyond desk scale.
MAX_DIMENSION = 14

# Frobenius distance below 1e-7 * (1 + ||S||) counts as the same solvent.
DEDUP_REL = 1e-7


@dataclass(frozen=True)
class PencilEigenpairs:
    """Eigenvalues of the pencil with unit-norm top-block eigenvectors.

    ``lambdas`` has length 2n; ``vectors`` holds the matching n-vectors as
    columns of an (n, 2n) array.  ``distinct_count`` is the number of
    eigenvalue clusters under the relative clustering tolerance.
    """

    lambdas: np.ndarray
    vectors: np.ndarray
    distinct_count: int


@dataclass(frozen=True)
class CandidateDiagnostic:
    """Per-subset record: indices, conditioning of W, raw residual norm."""

    subset: tuple[int, ...]
    cond_w: float
    residual_norm: float
    accepted: bool


@dataclass(frozen=True)
class SolventSet:
    """Result of solvent enumeration.

    ``solvents`` are pairwise distinct under the duplicate metric and every
    entry passes the residual gate.  ``haar_satisfied`` reports whether all
    2n eigenvalues were distinct and every n-subset of eigenvectors was
    numerically independent; ``infinite_family_flag`` is set when some
    eigenvalue cluster of the companion has geometric multiplicity >= 2
    (eigenvector freedom implies a continuum of diagonalizable solvents).
    """

    solvents: tuple[np.ndarray, ...]
    candidates_tried: int
    haar_satisfied: bool
    infinite_family_flag: bool
    diagnostics: tuple[CandidateDiagnostic, ...]


def companion(problem: QmeProblem) -> np.ndarray:
    """Block companion matrix [[0, E], [L0, L1]] of the quadratic pencil.

    Its 2n eigenvalues are the roots of det(lam^2 E - L1 lam - L0), and for
    an eigenpair (lam, [v; w]) the blocks satisfy w = lam v and Q(lam)v = 0.
    """
    n = problem.n
    zero = np.zeros((n, n), dtype=np.complex128)
    eye = np.eye(n, dtype=np.complex128)
    return np.block([[zero, eye], [problem.l0, problem.l1]])


def _cluster_indices(lambdas: np.ndarray, rel_tol: float) -> list[list[int]]:
    """Union-find clustering of eigenvalues at relative gap ``rel_tol``.

    Order independent; clusters are returned sorted by their first index.
    """
    m = len(lambdas)
    scale = max(1.0, float(np.max(np.abs(lambdas)))) if m else 1.0
    parent = list(range(m))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if abs(lambdas[i] - lambdas[j]) <= rel_tol * scale:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return [groups[root] for root in sorted(groups)]


def pencil_eigenpairs(problem: QmeProblem) -> PencilEigenpairs:
    """Eigenpairs of the companion matrix, reduced to their top n-blocks.

    Each returned vector is the top block of a 2n eigenvector, renormalized
    to unit 2-norm (the top block never vanishes for a finite eigenvalue).
    """
    c = companion(problem)
    try:
        lambdas, full = np.linalg.eig(c)
    except np.linalg.LinAlgError as exc:
        raise EigFailure(f"companion eigendecomposition failed: {exc}") from None
    top = full[: problem.n, :].copy()
    norms = np.linalg.norm(top, axis=0)
    top /= np.where(norms > 0.0, norms, 1.0)
    clusters = _cluster_indices(lambdas, problem.tol.eig_cluster_rel)
    lambdas.flags.writeable = False
    top.flags.writeable = False
    return PencilEigenpairs(lambdas=lambdas, vectors=top, distinct_count=len(clusters))


def _has_eigenvector_freedom(problem: QmeProblem, pairs: PencilEigenpairs) -> bool:
    """True when some repeated companion eigenvalue has geometric multiplicity >= 2."""
    c = companion(problem)
    two_n = 2 * problem.n
    for members in _cluster_indices(pairs.lambdas, problem.tol.eig_cluster_rel):
        if len(members) < 2:
            continue
        center = complex(np.mean(pairs.lambdas[members]))
        s = np.linalg.svd(c - center * np.eye(two_n), compute_uv=False)
        rank = int(np.sum(s > problem.tol.rank_rel * s[0])) if s[0] > 0.0 else 0
        if two_n - rank >= 2:
            return True
    return False


def _is_duplicate(s: np.ndarray, found: list[np.ndarray], traces: list[complex]) -> bool:
    """Duplicate test against the accepted list under the relative metric.

    |tr A - tr B| <= sqrt(n) ||A - B||_F, so a cheap trace comparison rules
    out almost every pair before the full Frobenius distance is computed
    (the accepted list can hold hundreds of genuinely distinct solvents).
    """
    if not found:
        return False
    limit = DEDUP_REL * (1.0 + frobenius(s))
    tr = complex(np.trace(s))
    near = np.flatnonzero(
        np.abs(np.asarray(traces) - tr) <= math.sqrt(s.shape[0]) * limit
    )
    return any(frobenius(s - found[k]) <= limit for k in near)


def enumerate_solvents(problem: QmeProblem) -> SolventSet:
    """All diagonalizable solvents reachable from n-subsets of the eigenpairs.

    Iterates the binom(2n, n) subsets in lexicographic index order.  A subset
    whose eigenvector matrix W has condition number >= 1/rank_rel is rejected
    outright; otherwise S = W diag(mu) W^-1 is formed and kept iff it passes
    the residual gate.  Only diagonalizable solvents are reachable this way;
    non-diagonalizable families are signaled via ``infinite_family_flag``.
    """
    if problem.n > MAX_DIMENSION:
        raise SizeGuard(
            f"dimension {problem.n} exceeds the enumeration limit {MAX_DIMENSION}"
        )
    pairs = pencil_eigenpairs(problem)
    two_n = 2 * problem.n
    cond_limit = 1.0 / problem.tol.rank_rel
    norm_l0 = frobenius(problem.l0)
    norm_l1 = frobenius(problem.l1)
    solvents: list[np.ndarray] = []
    traces: list[complex] = []
    diagnostics: list[CandidateDiagnostic] = []
    tried = 0
    all_subsets_independent = True
    for subset in itertools.combinations(range(two_n), problem.n):
        tried += 1
        w = pairs.vectors[:, subset]
        sv = np.linalg.svd(w, compute_uv=False)
        cond = float(sv[0] / sv[-1]) if sv[-1] > 0.0 else math.inf
        if not cond < cond_limit:
            all_subsets_independent = False
            diagnostics.append(CandidateDiagnostic(subset, cond, math.inf, False))
            continue
        mu = pairs.lambdas[list(subset)]
        s = np.linalg.solve(w.T, (w * mu).T).T
        ok, rnorm = _gate(problem, s, norm_l0, norm_l1)
        if ok and not _is_duplicate(s, solvents, traces):
            s.flags.writeable = False
            solvents.append(s)
            traces.append(complex(np.trace(s)))
        diagnostics.append(CandidateDiagnostic(subset, cond, rnorm, bool(ok)))
    haar = pairs.distinct_count == two_n and all_subsets_independent
    return SolventSet(
        solvents=tuple(solvents),
        candidates_tried=tried,
        haar_satisfied=haar,
        infinite_family_flag=_has_eigenvector_freedom(problem, pairs),
        diagnostics=tuple(diagnostics),
    )


def eisenfeld_predicts_solvents(problem: QmeProblem) -> tuple[bool, float]:
    """Contraction-style existence test 4 ||L1^-1|| ||L1^-1 L0|| < 1.

    Evaluated in the spectral norm.  Returns ``(False, inf)`` when L1 is
    numerically singular; a True verdict guarantees that at least two
    solvents exist.
    """
    sv = np.linalg.svd(problem.l1, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= problem.tol.rank_rel * sv[0]:
        return False, math.inf
    inv_norm = 1.0 / float(sv[-1])
    ratio = float(np.linalg.norm(np.linalg.solve(problem.l1, problem.l0), 2))
    value = 4.0 * inv_norm * ratio
    return value < 1.0, value

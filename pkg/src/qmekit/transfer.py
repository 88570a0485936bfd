"""Unit-cell transfer matrices of periodic structures and their N-period
reduction through the Chebyshev identity.

A lossless cell with complex transmission t and reflection r (with
|r|^2 + |t|^2 = 1) has the unimodular transfer matrix
M = [[1/t, conj(r)/conj(t)], [r/t, 1/conj(t)]], which satisfies the
Cayley-Hamilton quadratic M^2 - 2 cos(beta) M + E = 0 with cos(beta) =
Re(1/t).  Powers then collapse to M^N = U_{N-1}(cos beta) M - U_{N-2}(cos
beta) E.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .commuting import chebyshev_u
from .core import frobenius
from .errors import NotUnitary, QmeError, ZeroTransmission

__all__ = [
    "UNIT_CONSTRAINT_TOL",
    "UnitCell",
    "SpectrumRow",
    "unit_cell",
    "n_period",
    "transmission_spectrum",
]

UNIT_CONSTRAINT_TOL = 1e-12


@dataclass(frozen=True)
class UnitCell:
    """One period of a lossless layered structure."""

    t: complex
    r: complex
    m: np.ndarray
    cos_beta: float


@dataclass(frozen=True)
class SpectrumRow:
    """One spectrum sample: index, cell cos(beta) and N-period transmittance."""

    index: int
    cos_beta: float
    transmittance: float


def unit_cell(t: complex, r: complex) -> UnitCell:
    """Build the unit cell for transmission/reflection coefficients (t, r).

    Requires |r|^2 + |t|^2 = 1 within 1e-12 and t != 0.  The cell quadratic
    M^2 - 2 cos(beta) M + E = 0 is verified on construction.
    """
    t = complex(t)
    r = complex(r)
    if t == 0:
        raise ZeroTransmission("t must be nonzero")
    gap = abs(abs(r) ** 2 + abs(t) ** 2 - 1.0)
    if gap > UNIT_CONSTRAINT_TOL:
        raise NotUnitary(f"|r|^2 + |t|^2 deviates from 1 by {gap:.3e}")
    m = np.array(
        [[1.0 / t, r.conjugate() / t.conjugate()], [r / t, 1.0 / t.conjugate()]],
        dtype=np.complex128,
    )
    cos_beta = (1.0 / t).real
    # Cayley-Hamilton with tr M = 2 cos(beta), det M = 1; exact up to roundoff.
    cell_gap = frobenius(m @ m - 2.0 * cos_beta * m + np.eye(2))
    assert cell_gap <= 1e-12 * (1.0 + frobenius(m) ** 2), "cell quadratic violated"
    m.flags.writeable = False
    return UnitCell(t, r, m, cos_beta)


def n_period(cell: UnitCell, n: int) -> np.ndarray:
    """M^N = U_{N-1}(cos beta) M - U_{N-2}(cos beta) E for N >= 1.

    Inside a band (|cos beta| < 1) this equals the sine closed form
    sin(N beta)/sin(beta) M - sin((N-1) beta)/sin(beta) E; the recurrence is
    used everywhere, including band gaps and band edges.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    u_cur = chebyshev_u(n - 1, cell.cos_beta)
    u_prev = chebyshev_u(n - 2, cell.cos_beta)
    return u_cur * cell.m - u_prev * np.eye(2, dtype=np.complex128)


def transmission_spectrum(
    samples, n: int
) -> tuple[list[SpectrumRow], list[tuple[int, str]]]:
    """Per-sample N-period transmittance 1 / |(M^N)_11|^2.

    ``samples`` is an iterable of (t, r) pairs, one per frequency sample.
    Samples violating the cell preconditions are reported in the error list
    (index, message) and processing continues; valid rows come back in
    sample order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rows: list[SpectrumRow] = []
    errors: list[tuple[int, str]] = []
    for index, (t, r) in enumerate(samples):
        try:
            cell = unit_cell(t, r)
        except QmeError as exc:
            errors.append((index, f"{type(exc).__name__}: {exc}"))
            continue
        top_left = complex(n_period(cell, n)[0, 0])
        rows.append(SpectrumRow(index, cell.cos_beta, 1.0 / abs(top_left) ** 2))
    return rows, errors

"""Solvents, symmetric functions and canonical reductions for quadratic
matrix equations X^2 - L1 X - L0 = 0 over dense complex matrices."""

from .commuting import (
    ChebyshevEval,
    alpha_beta_closed,
    chebyshev_u,
    chebyshev_u_matrix,
    evaluate_chebyshev,
    power_closed,
    principal_sqrt,
)
from .core import (
    QmeProblem,
    TolerancePolicy,
    as_matrix,
    frobenius,
    is_solvent,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    residual,
    store_matrix,
    subordinate_norm,
)
from .errors import (
    DimensionMismatch,
    EigFailure,
    IoError,
    NotASolvent,
    NotCommuting,
    NotComplete,
    NotDiagonalizable,
    NotUnitary,
    ParseError,
    QmeError,
    SingularA,
    SingularMatrix,
    SizeGuard,
    ZeroTransmission,
)
from .reconstruct import (
    PairClassification,
    PairKind,
    classify_pair,
    coefficients_from_pair,
    is_complete_pair,
)
from .riccati import (
    ReductionTrace,
    RiccatiProblem,
    bqme_residual,
    reduce_bqme,
    reduce_riccati,
    riccati_residual,
    sbqme_residual,
    solve_sbqme,
)
from .spectral import (
    CandidateDiagnostic,
    PencilEigenpairs,
    SolventSet,
    companion,
    eisenfeld_predicts_solvents,
    enumerate_solvents,
    pencil_eigenpairs,
)
from .symfun import (
    AlphaBeta,
    PermSymbol,
    alpha_beta,
    alpha_beta_oracle,
    check_girard_newton,
    check_waring,
    elementary_pi2,
    elementary_sigma2,
    mixed_sum,
    perm_sum,
    perm_symbol,
    pi_p,
    power_linearized,
    power_sum,
    sigma_p,
)
from .transfer import SpectrumRow, UnitCell, n_period, transmission_spectrum, unit_cell

__version__ = "0.1.0"

__all__ = [
    "AlphaBeta",
    "CandidateDiagnostic",
    "ChebyshevEval",
    "DimensionMismatch",
    "EigFailure",
    "IoError",
    "NotASolvent",
    "NotCommuting",
    "NotComplete",
    "NotDiagonalizable",
    "NotUnitary",
    "PairClassification",
    "PairKind",
    "ParseError",
    "PencilEigenpairs",
    "PermSymbol",
    "QmeError",
    "QmeProblem",
    "ReductionTrace",
    "RiccatiProblem",
    "SingularA",
    "SingularMatrix",
    "SizeGuard",
    "SolventSet",
    "SpectrumRow",
    "TolerancePolicy",
    "UnitCell",
    "ZeroTransmission",
    "alpha_beta",
    "alpha_beta_closed",
    "alpha_beta_oracle",
    "as_matrix",
    "bqme_residual",
    "chebyshev_u",
    "chebyshev_u_matrix",
    "check_girard_newton",
    "check_waring",
    "classify_pair",
    "coefficients_from_pair",
    "companion",
    "eisenfeld_predicts_solvents",
    "elementary_pi2",
    "elementary_sigma2",
    "enumerate_solvents",
    "evaluate_chebyshev",
    "frobenius",
    "is_complete_pair",
    "is_solvent",
    "load_matrix",
    "matrix_from_json",
    "matrix_to_json",
    "mixed_sum",
    "n_period",
    "pencil_eigenpairs",
    "perm_sum",
    "perm_symbol",
    "pi_p",
    "power_closed",
    "power_linearized",
    "power_sum",
    "principal_sqrt",
    "reduce_bqme",
    "reduce_riccati",
    "residual",
    "riccati_residual",
    "sbqme_residual",
    "sigma_p",
    "solve_sbqme",
    "store_matrix",
    "subordinate_norm",
    "transmission_spectrum",
    "unit_cell",
]

"""Exception hierarchy shared by the whole package."""


class QmeError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(QmeError):
    """Operand shapes are incompatible."""


class ParseError(QmeError):
    """Malformed matrix data: bad JSON, ragged rows, non-finite entries."""


class IoError(QmeError):
    """File could not be read or written."""


class EigFailure(QmeError):
    """The underlying eigendecomposition did not converge."""


class SizeGuard(QmeError):
    """Request exceeds a combinatorial size limit."""


class NotComplete(QmeError):
    """The pair difference S1 - S2 is numerically singular."""


class NotASolvent(QmeError):
    """A matrix failed the residual gate of the equation it was offered to."""


class NotCommuting(QmeError):
    """The coefficients do not commute, so the closed forms do not apply."""


class SingularMatrix(QmeError):
    """A numerically zero eigenvalue forbids the requested inverse."""


class NotDiagonalizable(QmeError):
    """The eigenvector matrix is numerically singular."""


class SingularA(QmeError):
    """The quadratic-term coefficient of a Riccati equation is singular."""


class NotUnitary(QmeError):
    """Transmission/reflection coefficients violate |r|^2 + |t|^2 = 1."""


class ZeroTransmission(QmeError):
    """A unit cell needs a nonzero transmission coefficient."""

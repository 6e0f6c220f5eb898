"""Exception hierarchy shared by all opsplit modules."""


class OpsplitError(Exception):
    """Base class for all library errors."""


class DimensionError(OpsplitError, ValueError):
    """Operands have incompatible or non-square shapes."""


class DomainError(OpsplitError, ValueError):
    """Input contains NaN/Inf entries or is otherwise outside the domain."""


class NumericalRankError(OpsplitError, ArithmeticError):
    """Matrix is defective or rank-deficient beyond what the operation tolerates."""


class SingularMatrixError(OpsplitError, ArithmeticError):
    """Linear system is singular to working precision."""


class DivergenceError(OpsplitError, ArithmeticError):
    """An iterate blew up past the divergence guard."""


class ConvergenceError(OpsplitError, ArithmeticError):
    """Step control underflowed before the requested tolerance was met."""


class UnsupportedFormError(OpsplitError, ValueError):
    """Problem is not in the normalized form the operation requires."""

"""Exception types raised across the package."""


class QuatfaError(Exception):
    """Base class for all library errors."""


class InvalidGeneratorError(QuatfaError, ValueError):
    """A quaternion expected to be a unit imaginary is not one."""


class BimoduleValidationError(QuatfaError, ValueError):
    """Scalar-action matrices do not define an H-bimodule."""


class NotIntertwiningError(QuatfaError, ValueError):
    """A real matrix fails to commute with the scalar actions."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class UnsupportedNormError(QuatfaError, ValueError):
    """The requested computation needs a Hilbertian norm."""


class NoSeparatorError(QuatfaError, ValueError):
    """Point separation was requested for the zero vector."""


class InvalidSubspaceError(QuatfaError, ValueError):
    """A spanning set is not invariant under both scalar actions."""


class RankDeficiencyError(QuatfaError, ValueError):
    """A Gram matrix is not positive definite."""


class InvalidRepresentationError(QuatfaError, ValueError):
    """Matrices fail to form a unital *-representation of H."""


class AlgebraClosureError(QuatfaError, ValueError):
    """Generators do not close to a *-algebra."""


class NotCommutativeError(QuatfaError, ValueError):
    """The algebra has a non-normal element; carries that element."""

    def __init__(self, message, witness, defect):
        super().__init__(f"{message} (||a*a - aa*|| = {defect:.3e})")
        self.witness = witness
        self.defect = defect

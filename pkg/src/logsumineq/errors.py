"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class SupportError(DomainError):
    """A state has weight where the reference state vanishes (divergent value)."""


class PreconditionError(ValueError):
    """A hypothesis of the inequality being checked is not satisfied."""


class SingularityError(PreconditionError):
    """A matrix that must be inverted has an eigenvalue below the safe floor."""


class DimensionError(ValueError):
    """Operands have incompatible or invalid shapes."""


class NumericError(RuntimeError):
    """An iterative numerical routine failed to converge."""

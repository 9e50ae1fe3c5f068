"""Exception types shared across the package.

All subclass ValueError so callers who don't care about the distinction can
catch a single type.
"""


class DimensionError(ValueError):
    """Operands act on different numbers of qubits."""


class AlgebraError(ValueError):
    """Operator algebra precondition violated (e.g. non-commuting generators)."""


class CapacityError(ValueError):
    """Requested dense object exceeds the configured qubit limit."""


class ValidationError(ValueError):
    """Numerical object fails a structural check (density matrix, Hermiticity)."""


class PrecisionError(ValueError):
    """Result not representable honestly at double precision."""

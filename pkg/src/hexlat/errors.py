"""Exception hierarchy shared by all modules.

The CLI maps these onto process exit codes: configuration problems -> 2,
precision/convergence problems -> 3, consistency (residual-arbiter)
problems -> 4.
"""


class HexlatError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(HexlatError, ValueError):
    """A physically or structurally invalid argument (zero chiral vector,
    hole larger than the cell, Poisson ratio outside (-1, 0.5), ...)."""


class ConfigurationError(HexlatError):
    """Mutually inconsistent or incomplete run configuration."""


class DomainError(HexlatError):
    """Evaluation point outside the region where a series is valid."""


class PoleError(DomainError):
    """Evaluation exactly at a pole (lattice point or hole center)."""


class PrecisionError(HexlatError):
    """A truncated sum failed its tail-convergence monitor.

    The offending tail estimate is carried in ``tail``.
    """

    def __init__(self, message, tail=None):
        super().__init__(message)
        self.tail = tail


class NumericalError(HexlatError):
    """Linear algebra failure (singular or hopelessly ill-conditioned
    truncated system).  ``condition`` carries the condition estimate."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class ConsistencyError(HexlatError):
    """A solution failed an internal cross-check (boundary residual,
    isotropy, round-trip).  ``residual`` carries the offending value."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual

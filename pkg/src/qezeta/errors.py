"""Exception taxonomy.

Two top-level families matter to callers (and to the CLI exit codes):
input/domain problems (``DomainError`` and subclasses) and evaluation
budget exhaustion (``ConvergenceError`` and subclasses).
"""


class QezetaError(Exception):
    """Base class for all library errors."""


class DomainError(QezetaError):
    """An input violates a precondition (|q| >= 1, bad tolerance, x = 0, ...)."""


class BranchError(DomainError):
    """Non-integer power requested for a base on the closed negative real axis."""


class PoleError(DomainError):
    """Gamma evaluated at a nonpositive integer."""


class ValidationError(DomainError):
    """A character table violates one of its invariants."""


class ConvergenceError(QezetaError):
    """A series or extrapolation failed to meet its tolerance within budget."""


class QuadratureError(ConvergenceError):
    """Adaptive quadrature exhausted its refinement budget."""

"""Exception hierarchy for the triangle correlation-function package."""


class TriangleCFError(Exception):
    """Base class for every error raised by this package."""


class NonPositiveSide(TriangleCFError, ValueError):
    pass


class NonTriangle(TriangleCFError, ValueError):
    """Side lengths violate the strict triangle inequality."""


class DomainError(TriangleCFError, ValueError):
    """Argument outside the domain of a special function or evaluator."""


class SingularPoint(TriangleCFError, ArithmeticError):
    """The third derivative diverges at the requested radius."""


class QuadratureFailure(TriangleCFError, RuntimeError):
    """Adaptive quadrature did not reach its tolerance within budget."""

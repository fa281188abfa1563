"""Exception hierarchy shared by every module."""

from __future__ import annotations


class UpordError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(UpordError, ValueError):
    pass


class DuplicateId(GraphError):
    pass


class DanglingEndpoint(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class UnknownVertex(GraphError, KeyError):
    pass


class UnknownEdge(GraphError, KeyError):
    pass


class CyclicGraphError(GraphError):
    pass


class NotProgressiveGraph(GraphError):
    pass


class OrderMismatch(UpordError, ValueError):
    """The edge order does not cover exactly the edges of the graph."""


class PreconditionFailed(UpordError):
    pass


class ValidationFailed(UpordError):
    """Carries the failing report (an AxiomReport or CppVerdict) as ``report``."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ConfigMismatch(UpordError, ValueError):
    pass


class InternalInvariantViolation(UpordError, AssertionError):
    """A construction that is correct by theory failed re-validation."""


class SourceMismatch(UpordError, ValueError):
    pass


class GraphTooLarge(UpordError, ValueError):
    pass


class BudgetExhausted(UpordError):
    pass


class NotPOP(UpordError, ValueError):
    pass


class CertificateFailed(UpordError):
    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class ParseError(UpordError, ValueError):
    pass


class UnknownFixture(UpordError, KeyError):
    pass

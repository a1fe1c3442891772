"""Exception hierarchy shared by every module.

Domain violations (a well-formed input that breaks a mathematical constraint)
derive from :class:`DomainError`; malformed input derives from
:class:`FormatError`.  The command line maps the two families to distinct exit
codes.
"""


class ProtocorkError(ValueError):
    """Base class for all errors raised by this package."""


class DomainError(ProtocorkError):
    pass


class FormatError(ProtocorkError):
    pass


class GraphFormatError(FormatError):
    """Raw graph data does not parse (wrong types, n < 1, bad sign...)."""


class IndexOutOfRange(DomainError):
    def __init__(self, edge, n):
        self.edge = tuple(edge)
        self.n = n
        super().__init__(f"edge {self.edge} has an index outside 1..{n}")


class DeltaConstraintViolated(DomainError):
    """Signed edge counts differ from the Kronecker delta.

    ``violations`` lists every offending ``(i, j, actual_signed_count)``; the
    ``i``, ``j`` and ``actual`` attributes repeat the first one.
    """

    def __init__(self, violations):
        self.violations = [tuple(v) for v in violations]
        self.i, self.j, self.actual = self.violations[0]
        detail = "; ".join(
            f"({i},{j}): expected {int(i == j)}, got {a}" for i, j, a in self.violations
        )
        super().__init__(f"signed edge counts violate a(i,j) = delta(i,j): {detail}")


class NotSymmetric(DomainError):
    pass


class Disconnected(DomainError):
    pass


class BudgetExceeded(DomainError):
    pass


class BoundaryMismatch(DomainError):
    pass


class BarHasReduced(DomainError):
    pass


class MismatchedShapes(DomainError):
    pass


class InconsistentGradings(DomainError):
    pass


class UnsupportedFormat(ProtocorkError):
    pass

"""Shared exception types.

Every failure mode that a caller can reasonably branch on gets its own
class; all inherit from BarloopError so blanket handling stays possible.
"""

__all__ = [
    "BarloopError",
    "WindowTooSmall",
    "MalformedTable",
    "UnboundedDegree",
    "NotASubcomplex",
    "NotReduced",
    "NotCoaugmented",
    "NotConilpotent",
    "FiltrationNotRespected",
    "InfiniteRank",
    "NotConnected",
    "NotSimplyConnected",
    "NotACycle",
    "Unorientable",
    "CapExceeded",
    "MismatchAt",
    "NotAHomomorphism",
    "NotInverse",
]


class BarloopError(Exception):
    """Base class for all package-specific errors."""


class WindowTooSmall(BarloopError):
    """A degree window [lo, hi] with hi <= lo was supplied."""


class MalformedTable(BarloopError):
    """A multiplication table fails associativity or identity axioms."""


class UnboundedDegree(BarloopError):
    """An operation needs a full basis in a degree where the simplicial
    set cannot enumerate one."""


class NotASubcomplex(BarloopError):
    """The supplied simplex set is not closed under faces."""


class NotReduced(BarloopError):
    """The simplicial set has more than one vertex."""


class NotCoaugmented(BarloopError):
    """No group-like coaugmentation element is available in degree 0."""


class NotConilpotent(BarloopError):
    """Iterated reduced coproducts fail to vanish within the degree bound."""


class FiltrationNotRespected(BarloopError):
    """A map sends filtration level p into a strictly higher level."""


class InfiniteRank(BarloopError):
    """A degreewise basis enumeration exceeded its cap."""


class NotConnected(BarloopError):
    """The augmented algebra has rank > 1 in degree 0."""


class NotSimplyConnected(BarloopError):
    """The coaugmented coalgebra has reduced elements in degree 1."""


class NotACycle(BarloopError):
    """An element that must be a cycle has nonzero differential."""


class Unorientable(BarloopError):
    """A relation cannot be oriented into a terminating rewrite rule."""


class CapExceeded(BarloopError):
    """A monomial enumeration hit its cap before completing."""


class MismatchAt(BarloopError):
    """A structure comparison failed; arguments say where."""

    def __init__(self, message, degree=None, element=None):
        super().__init__(message)
        self.degree = degree
        self.element = element


class NotAHomomorphism(BarloopError):
    """A claimed ring map does not kill the source relations."""


class NotInverse(BarloopError):
    """Two ring maps are not mutually inverse on generators."""

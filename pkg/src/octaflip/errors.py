"""Exception hierarchy.

The CLI maps these onto exit codes: :class:`InvalidInput` -> 1,
:class:`NonGenericMotion` -> 2, :class:`RelationFailed` -> 3.
"""

from __future__ import annotations


class OctaflipError(Exception):
    """Base class for all package errors."""


class InvalidInput(OctaflipError, ValueError):
    """Malformed scene, element text or argument."""


class ParseError(InvalidInput):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class BackendMismatch(OctaflipError, TypeError):
    """Operands come from different backends or generator counts."""


class NotGeneric(OctaflipError):
    """A configuration has repeated points or a collinear triple."""

    def __init__(self, message: str, triple: tuple[int, ...] | None = None):
        super().__init__(message)
        self.triple = triple


class SiteNotPresent(OctaflipError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "flip site not present"


class MissingRole(OctaflipError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "missing role face"


class NonGenericMotion(OctaflipError):
    """A motion crosses a degenerate configuration.

    ``triple`` and ``interval`` locate the offending event when known.
    """

    def __init__(self, message: str, triple=None, interval=None):
        super().__init__(message)
        self.triple = triple
        self.interval = interval


class DegenerateEvent(NonGenericMotion):
    """A triple touches collinearity without crossing it."""


class IdenticallyZero(NonGenericMotion):
    """A triple stays collinear over a whole segment."""


class EndpointEvent(NonGenericMotion):
    """A collinearity occurs exactly at a breakpoint or at t = 0 or 1."""


class SimultaneousEvents(NonGenericMotion):
    """Two distinct triples become collinear at the same instant."""


class ObstructedTriangle(NonGenericMotion):
    """The collapsing triangle is not a face, or the rebuild disagrees."""


class NotClosed(InvalidInput):
    """The motion does not return the point set to itself."""


class RelationFailed(OctaflipError):
    def __init__(self, identity: str, lhs: str, rhs: str):
        super().__init__(f"relation {identity} failed: {lhs} != {rhs}")
        self.identity = identity
        self.lhs = lhs
        self.rhs = rhs

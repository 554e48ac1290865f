"""Exception types raised across the package."""

from __future__ import annotations


class BNSError(ValueError):
    """Base class for all errors raised by :mod:`bns`."""


class MalformedToken(BNSError):
    """A PD or DT code could not be tokenized."""


class EdgeMultiplicity(BNSError):
    """An edge label does not occur exactly twice in a PD code."""


class InconsistentOrientation(BNSError):
    """No consistent orientation of the edges of a PD code exists."""


class NotAKnot(BNSError):
    """An operation that needs a one-component diagram got a link."""


class NonPlanarData(BNSError):
    """The rotation system of a PD code does not describe a planar diagram."""


class NonCyclicPiece(BNSError):
    """A graded piece that has to be cyclic is not.

    Only raised for degree 0 of reduced knot complexes, where it means a bug.
    """


class InconsistentReport(BNSError):
    """Computed invariants violate a relation that is a theorem."""

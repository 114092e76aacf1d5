"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class HdxError(Exception):
    """Base class for every error raised by this package."""


# --- complex construction / lookup ---------------------------------------

class EmptyInput(HdxError):
    """No maximal faces were supplied."""


class MixedDimension(HdxError):
    """Maximal faces of unequal cardinality (purity enforced at input)."""


class DuplicateVertexInFace(HdxError):
    """A maximal face repeats a vertex label."""


class FaceNotInComplex(HdxError):
    """The requested face is not a face of the complex."""


class DimensionMismatch(HdxError):
    """Cochain/face dimensions are incompatible for the operation."""


class LevelOutOfRange(HdxError):
    """A face-dimension index lies outside the valid range."""


# --- cochain machinery -----------------------------------------------------

class BadFatness(HdxError):
    """Fatness constant outside the open interval (0, 1)."""


class TopDimension(HdxError):
    """Operation needs faces one dimension up, but the input is top-level."""


# --- walks -------------------------------------------------------------------

class SupportMismatch(HdxError):
    """Distribution is not supported on the graph's vertex set."""


class DisconnectedGraph(HdxError):
    """Mixing verification refused: the graph is not connected."""


# --- spectral ---------------------------------------------------------------

class IsolatedVertex(HdxError):
    """Normalized adjacency undefined: a vertex has zero weighted degree."""


class NoConvergence(HdxError):
    """Eigensolver failed to converge within the sweep cap."""


# --- certification ------------------------------------------------------------

class TooLargeForExact(HdxError):
    """Exact enumeration cap exceeded; sampled/heuristic mode required."""


class AlphaTooLarge(HdxError):
    """Skeleton-expansion constant violates the theorem hypothesis."""


class DimensionTooSmall(HdxError):
    """Closed-form mixing bounds need complex dimension greater than 1."""


class NonPositiveC(HdxError):
    """The link-spectrum constant must be positive."""


class NotPartiteRegular(HdxError):
    """The complex failed the partite-regularity check."""


class TooFewVertices(HdxError):
    """Generator needs at least d+1 vertices."""


class EmptyAfterPruning(HdxError):
    """Random complex retained no top-dimensional face."""


class InvalidComplex(HdxError):
    """A structural invariant of the complex does not hold."""


class BoundViolated(HdxError):
    """An asserted inequality failed; carries both sides for diagnosis.

    Attributes
    ----------
    name : str
        Which inequality failed.
    where : object
        Level / step / witness locating the failure.
    lhs, rhs : object
        The two sides, exact rationals or floats as computed.
    """

    def __init__(self, name, where, lhs, rhs):
        self.name = name
        self.where = where
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"{name} violated at {where}: lhs={lhs} rhs={rhs}")

"""Exception hierarchy.

The CLI maps these onto exit codes: ValidationError and its subclasses
exit 2, ScaleExceeded exits 3, ParseError exits 4.
"""

from __future__ import annotations


class DiwallkitError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(DiwallkitError):
    """A precondition or certificate check failed."""


class ParseError(DiwallkitError):
    """Malformed input document."""


class ScaleExceeded(DiwallkitError):
    """Instance exceeds a soft exact-search limit.

    Lift with DIWALLKIT_SCALE_OVERRIDE=1 or the corresponding CLI flag.
    """


# -- rotation systems ------------------------------------------------------

class DanglingDart(ValidationError):
    """A rotation references an edge end that does not belong there."""


class DuplicateDart(ValidationError):
    """A dart appears more than once across the rotations."""


class NotSphere(ValidationError):
    """Face tracing contradicts Euler's formula for the sphere."""


class HasLoop(ValidationError):
    """Operation requires a loopless input."""


class InvalidDrawing(ValidationError):
    """Coordinates do not determine a usable rotation system."""


# -- duality ---------------------------------------------------------------

class Disconnected(ValidationError):
    """Operation requires a weakly connected input."""


class NotWalk(ValidationError):
    """Dart sequence is not a simple path or cycle of the map."""


class NotBond(ValidationError):
    """Vertex partition does not induce a bond."""


# -- multicuts -------------------------------------------------------------

class NotAlternating(ValidationError):
    """Pattern is not alternating."""


class NotPath(ValidationError):
    """Input does not describe a simple path with the stated endpoints."""


class NotOneWeak(ValidationError):
    """Operation requires a 1-weak (weakly connected) digraph."""


class SameVertex(ValidationError):
    """Source and sink must differ."""


class InvalidMulticut(ValidationError):
    """Certificate failed multicut validation."""


# -- rings -----------------------------------------------------------------

class RingTooSmall(ValidationError):
    """Ring has too few cycles for the requested selection."""


class NotOdd(ValidationError):
    """Thinning step requires an odd spacing parameter."""


class InterleavingExceeded(ValidationError):
    """Ambient interleaving exceeds the bound the thinning step assumes."""


class InvalidArcs(ValidationError):
    """Arc partition does not split the boundary cycle as required."""


class InvalidRing(ValidationError):
    """Certificate failed ring validation."""


class NestingViolated(ValidationError):
    """Subpath nesting hypothesis fails for the given ring pair."""


# -- walls -----------------------------------------------------------------

class BadParity(ValidationError):
    """Generator parameter has the wrong parity."""


class TooSmall(ValidationError):
    """Generator or operation parameter below its minimum."""


class RoutingFailed(ValidationError):
    """A box violates its internal routing obligation."""


# -- width -----------------------------------------------------------------

class NotTwoWeak(ValidationError):
    """Operation requires a 2-weak didrawing."""


class CutEdge(ValidationError):
    """Operation requires a weakly 2-edge-connected input."""


# -- blowup ----------------------------------------------------------------

class NotTwoEdgeConnected(ValidationError):
    """Blowup requires a weakly 2-edge-connected input."""


class TransferCostExceeded(DiwallkitError):
    """Transferred carving exceeded the source width.

    This cannot happen for a correct implementation; it is raised loudly
    instead of being silently clamped.
    """


# -- minors ----------------------------------------------------------------

class NotButterfly(ValidationError):
    """Edge fails both butterfly degree conditions."""


class NotStrong(ValidationError):
    """Vertex set does not induce a strongly connected subdigraph."""

class WormError(Exception):
    """Base class of every error raised by the library."""


class GraphError(WormError, ValueError):
    pass


class DisconnectedGraph(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class BadLabel(GraphError):
    pass


class EmptyEdgeSet(GraphError):
    pass


class BadDimension(GraphError):
    pass


class MalformedEdgeList(GraphError):
    pass


class StateError(WormError):
    pass


class LeavesStateSpace(StateError):
    """A toggle would produce an edge set with more than two odd vertices."""


class NotInW(StateError, ValueError):
    pass


class TooLarge(WormError):
    """An exact computation was asked to exceed its configured cap."""


class NotIrreducible(WormError):
    pass


class IterationCap(WormError):
    pass


class InternalInvariant(WormError):
    pass


class TransitionNotOnPath(WormError, ValueError):
    pass


class NotInImage(WormError, ValueError):
    pass


class EstimationError(WormError, ValueError):
    pass


class BadTolerance(EstimationError):
    pass


class ZeroSampleFraction(EstimationError):
    """No sample hit the indicator; the sample count is far too small."""


class DistanceExceedsK(EstimationError):
    pass


class VerificationFailure(WormError):
    """A numerical check failed. `records` holds the failing check records."""
    def __init__(self, message, records=None):
        WormError.__init__(self, message)
        self.records = list(records or [])


class Mismatch(VerificationFailure):
    pass


class CrossCheckMismatch(VerificationFailure):
    pass


class BoundViolation(VerificationFailure):
    pass


class BijectionViolation(VerificationFailure):
    pass

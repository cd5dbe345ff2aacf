"""Exception hierarchy shared across the package."""


class UnionPowerError(Exception):
    """Base class for every error raised by this package."""


class GraphValidationError(UnionPowerError):
    """Raised when raw graph input violates a structural invariant."""


class TooFewNodes(GraphValidationError):
    pass


class TooFewUnions(GraphValidationError):
    pass


class OverlappingUnions(GraphValidationError):
    pass


class EmptyUnion(GraphValidationError):
    pass


class UncoveredNode(GraphValidationError):
    pass


class NodeOutOfRange(GraphValidationError):
    pass


class SelfLoop(GraphValidationError):
    pass


class NotABijection(UnionPowerError):
    pass


class SameUnion(UnionPowerError):
    pass


class WouldLeaveSingleUnion(UnionPowerError):
    pass


class NoExternalEdges(UnionPowerError):
    pass


class CoalitionSpansUnions(UnionPowerError):
    pass


class UnionTooLarge(UnionPowerError):
    pass


class GraphTooLarge(UnionPowerError):
    pass


class SpilloverPropertyAbsent(UnionPowerError):
    pass


class NoIncompleteBridge(UnionPowerError):
    pass


class UnknownAxiom(UnionPowerError):
    pass


class UnknownFixture(UnionPowerError):
    pass


class UniverseTooLarge(UnionPowerError):
    pass

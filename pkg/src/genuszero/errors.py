"""Exception hierarchy shared by all modules."""


class GenusZeroError(ValueError):
    """Base class for domain errors raised by this package."""


class OutOfRange(GenusZeroError):
    pass


# -- trees --------------------------------------------------------------------

class TreeError(GenusZeroError):
    """A tree fails one of the stable-tree invariants."""


class MalformedTree(TreeError):
    pass


class CyclicTree(TreeError):
    pass


class DisconnectedTree(TreeError):
    pass


class UnstableVertex(TreeError):
    def __init__(self, vertex, valence):
        self.vertex = vertex
        self.valence = valence
        super().__init__(f"vertex {vertex!r} has valence {valence} < 3")


class DuplicateTailLabel(TreeError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"tail label {label} occurs more than once")


class MissingTail(TreeError):
    pass


class TailLabelClash(TreeError):
    pass


class NoSuchEdge(TreeError):
    pass


class NonInjectiveRelabeling(TreeError):
    pass


class MorphismError(GenusZeroError):
    """A tree morphism violates one of its invariants."""


class SourceTargetMismatch(MorphismError):
    pass


class TailContracted(MorphismError):
    pass


# -- symmetric ----------------------------------------------------------------

class NotBijective(GenusZeroError):
    pass


class NotPosetInGroupoids(GenusZeroError):
    pass


# -- mgt ----------------------------------------------------------------------

class NotADivisor(GenusZeroError):
    pass


class ModulusMismatch(GenusZeroError):
    pass


class DoesNotDescend(GenusZeroError):
    pass


class LevelMismatch(GenusZeroError):
    pass


class InvalidFamily(GenusZeroError):
    pass

"""Exception hierarchy.

Every error raised by the library derives from :class:`LatticeError`, so the
CLI can map all instance problems to a single exit status.
"""


class LatticeError(Exception):
    """Base class for all instance errors."""


# graph_core
class SelfLoop(LatticeError):
    pass


class Disconnected(LatticeError):
    pass


class BadRotation(LatticeError):
    pass


class NotSphere(LatticeError):
    pass


class NotBipartite(LatticeError):
    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


# orientation_lattice
class BadCycle(LatticeError):
    pass


class EmptyEnumeration(LatticeError):
    pass


class Inconsistent(LatticeError):
    pass


class NotAHeight(LatticeError):
    pass


class DifferentCirculation(LatticeError):
    pass


class NotMaximal(LatticeError):
    pass


class IsAstar(LatticeError):
    pass


class TooLarge(LatticeError):
    pass


class NotAcyclic(LatticeError):
    pass


# matching_lattice
class NoDFactor(LatticeError):
    pass


class WrongDegrees(LatticeError):
    pass


class NotAlternating(LatticeError):
    pass


class IsFstar(LatticeError):
    pass


class WrongFamily(LatticeError):
    pass


class NotSimplyConnected(LatticeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# torus_cohomology
class NotInDiagram(LatticeError):
    pass


# tree_lattice
class NotSpanningTree(LatticeError):
    pass


class NotPivotal(LatticeError):
    pass


class NotPivotal4(NotPivotal):
    pass


class NotIncident(LatticeError):
    pass


class NotPerfectMatching(LatticeError):
    pass


class NotGraded(LatticeError):
    pass


class NotOuterHamiltonian(LatticeError):
    pass


# families / cli
class BadParams(LatticeError):
    pass


class ParseError(LatticeError):
    pass


class SchemaError(LatticeError):
    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer

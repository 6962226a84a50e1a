"""Exception hierarchy shared across the package."""


class HomtreesError(Exception):
    """Base class for every recoverable failure raised by this package."""


class FormatError(HomtreesError):
    """Input file could not be parsed."""


class NoPacking(HomtreesError):
    """The requested number of edge-disjoint spanning trees does not exist."""


class BoundNotMet(HomtreesError):
    """A degree-bounded search exhausted its moves without certifying the bound."""


class OddDegree(HomtreesError):
    """Lifting requires an even-degree vertex."""


class CutEdgeAtVertex(HomtreesError):
    """Lifting requires the vertex not to be incident with a cut-edge."""


class NoGoodPairing(HomtreesError):
    """No connectivity-preserving, loop-free pairing of the incident edges exists."""


class InvalidPartition(HomtreesError):
    """The supplied groups do not partition the required set."""


class LoopCreated(HomtreesError):
    """Vertex identification would merge two adjacent vertices."""


class SumConditionViolated(HomtreesError):
    """Residue targets do not sum to the edge count modulo k."""


class OrientationNotFound(HomtreesError):
    """No orientation with the prescribed outdegree residues was found."""


class MapMismatch(HomtreesError):
    """An orientation does not match the edge set of the given back-map."""


class InfeasibleTarget(HomtreesError):
    """Residue targets fail the feasibility sum condition for this split."""


class NotATree(HomtreesError):
    """The supplied graph is not a tree with at least one edge."""


class NotBipartite(HomtreesError):
    """The operation needs a bipartite graph (or consistent side tags)."""


class DivisibilityViolated(HomtreesError):
    """A required degree-divisibility precondition fails."""


class EquationsViolated(HomtreesError):
    """The edge coloring does not satisfy the per-vertex degree equations."""


class GirthTooSmall(HomtreesError):
    """Host girth is below the tree diameter, so repair cannot apply."""


class RepairStalled(HomtreesError):
    """No improving switch sequence was found while conflicts remain."""


class PreconditionViolated(HomtreesError):
    """A documented precondition of the operation fails."""


class UnknownBoundKind(HomtreesError):
    """The bounds calculator does not know the requested formula."""


class Unsatisfiable(HomtreesError):
    """The generator parameters cannot be met."""

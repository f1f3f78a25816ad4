"""Exception types shared across the package."""


class KrCoverError(Exception):
    """Base class for all package errors."""


class GraphError(KrCoverError, ValueError):
    """Malformed graph, or a vertex id outside the host graph."""


class ParseError(KrCoverError, ValueError):
    """Input text does not follow the graph/annotation format."""


class NotACoverError(KrCoverError, ValueError):
    """A set passed as a K_r-cover leaves an r-clique behind."""


class PreconditionError(KrCoverError, ValueError):
    """A caller-certified precondition failed re-verification."""


class DecompositionError(KrCoverError, ValueError):
    """Tree decomposition is invalid for the graph it is used with."""


class InstanceTooLarge(KrCoverError, ValueError):
    """Brute-force oracle refused an instance above its size caps."""

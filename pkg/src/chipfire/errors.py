"""Exception types shared across the package."""


class ChipfireError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ChipfireError):
    """Edge-list text is malformed at the token level."""


class InvalidGraph(ChipfireError):
    """Structurally invalid graph: self-loop, duplicate edge, id out of range."""


class EmptyGraph(ChipfireError):
    """Input describes a graph with no vertices."""


class Unsatisfiable(ChipfireError):
    """A random generator could not meet its constraints within its retry budget."""


class Disconnected(ChipfireError):
    """Operation requires a connected graph."""


class SizeMismatch(ChipfireError):
    """Configuration length does not match the graph's vertex count."""


class ResourceExhausted(ChipfireError):
    """A configured cap (orbit store, enumeration count, step budget) was exceeded."""

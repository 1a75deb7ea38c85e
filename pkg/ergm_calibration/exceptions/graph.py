from .base import ErgmCalibrationError


class GraphError(ErgmCalibrationError):
    """Base class for graph-related errors."""

    default_message = "Graph error"


class GraphStructureError(GraphError):
    """
    Raised on a non-canonical dyad, an out-of-range node index or a
    mutation of a frozen graph.
    """

    default_message = "Invalid graph structure operation"


class DataFormatError(GraphError):
    """
    Raised when an edge-list or attribute file cannot be parsed.
    """

    default_message = "Malformed network data file"
    hint = "Check the edge-list/attribute layout and the --one-indexed setting"

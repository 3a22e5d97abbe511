"""Shared exception types."""


class FourdError(Exception):
    """Base class for all engine errors."""


class ScheduleParseError(FourdError):
    """Bad schedule CSV; message names the offending line."""


class CyclicNetworkError(FourdError):
    """CPM was asked to solve a network that contains a cycle."""


class LayerError(FourdError):
    """Bad layer file or geometry; message names the feature index."""


class UnionError(FourdError):
    """Degenerate input to the polygon union; message names the part index."""


class JoinError(FourdError):
    """Table join/relate violation; message names the offending key."""


class ExtrusionError(FourdError):
    """A feature cannot be extruded (missing or invalid heights)."""


class TakeoffError(FourdError):
    """Unit is incompatible with the prism kind it was asked to measure."""


class BundleError(FourdError):
    """Project bundle failed to load; message carries file context."""

"""Exception hierarchy shared by every stage of the pipeline."""


class GeostreamError(Exception):
    """Base class for all geostream failures."""


class EqualTimestampsError(GeostreamError, ValueError):
    """Two positions carry the same timestamp, so no velocity can be derived."""


class EmptySynopsisError(GeostreamError, ValueError):
    """An RMSE was requested against a synopsis without any critical point."""


class ZeroRawCountError(GeostreamError, ValueError):
    """A compression ratio was requested for an empty raw stream."""


class ExportIoError(GeostreamError, OSError):
    """Writing an export document failed."""


class GeometryOutOfBoundsError(GeostreamError, ValueError):
    """An area or port lies outside the grid bounding box."""


class UnknownVesselError(GeostreamError, KeyError):
    """The vessel is not part of the current position snapshot."""


class OpenGapError(GeostreamError, ValueError):
    """A gap interval has no end yet, so its speed cannot be bounded."""


class MalformedRecordError(GeostreamError, ValueError):
    """An input line could not be turned into a PositionReport."""


class InvalidSpecError(GeostreamError, ValueError):
    """A synthetic fleet specification is inconsistent."""

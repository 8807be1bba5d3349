"""Exception hierarchy shared across the package.

Every error raised by library code derives from :class:`SegRobustError`
so callers can catch one base type at pipeline boundaries.
"""

__all__ = [
    "SegRobustError",
    "DimensionMismatchError",
    "RleError",
    "SumMismatchError",
    "MalformedRunsError",
    "EmptySubMaskError",
    "EmptySelectionError",
    "UnknownKindError",
    "InvalidSeverityError",
    "ImageTooSmallError",
    "SchemaError",
    "DuplicateMaskIdError",
    "MissingGroundTruthError",
    "EmptyCorpusError",
    "UnreadableFileError",
    "MissingMaskDocumentError",
    "NoRecordsError",
]


class SegRobustError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(SegRobustError):
    """Two rasters that must share (height, width) do not."""


class RleError(SegRobustError):
    """Base class for run-length decoding failures."""


class SumMismatchError(RleError):
    """Run lengths do not sum to width * height."""


class MalformedRunsError(RleError):
    """A run other than the leading zero-run has length zero, or a run is negative."""


class EmptySubMaskError(SegRobustError):
    """A sub-mask with zero area where the intersection ratio is undefined."""


class EmptySelectionError(SegRobustError):
    """No sub-mask survived overlap selection; there is nothing to consolidate."""


class UnknownKindError(SegRobustError):
    """Corruption kind name is not one of the supported kinds."""


class InvalidSeverityError(SegRobustError):
    """Severity outside the integer range 0..5."""


class ImageTooSmallError(SegRobustError):
    """Image smaller than the segmenter's seeding grid cell."""


class SchemaError(SegRobustError):
    """A mask document violates the interchange schema."""


class DuplicateMaskIdError(SchemaError):
    """A mask document lists the same mask id twice."""


class MissingGroundTruthError(SegRobustError):
    """A corpus frame has no ground-truth mask file."""


class EmptyCorpusError(SegRobustError):
    """A corpus root contains no frames."""


class UnreadableFileError(SegRobustError):
    """A raster file exists but cannot be decoded."""


class MissingMaskDocumentError(SegRobustError):
    """An evaluation unit has no mask document on disk."""


class NoRecordsError(SegRobustError):
    """A report was requested over an empty record stream."""

"""Robustness benchmark for over-segmenting zero-shot segmenters.

Corrupt frames at graded severities, consolidate a segmenter's
sub-masks against the ground-truth region of interest, and report mean
IoU per (kind, severity, mode) group — where mode is the best single
overlapping sub-mask versus the union of all overlapping sub-masks.
"""

from .corruptions import (
    CORRUPTION_KINDS,
    GEOMETRIC_KINDS,
    MAX_SEED,
    CorruptionSpec,
    ManifestRow,
    SeverityTable,
    apply_corruption,
    corrupt_corpus,
    distortion_psnr,
    frame_seed,
)
from .dataset import Corpus, FrameRef, load_corpus, load_gt_mask
from .errors import (
    DimensionMismatchError,
    DuplicateMaskIdError,
    EmptyCorpusError,
    EmptySelectionError,
    EmptySubMaskError,
    ImageTooSmallError,
    InvalidSeverityError,
    MalformedRunsError,
    MissingGroundTruthError,
    MissingMaskDocumentError,
    NoRecordsError,
    RleError,
    SchemaError,
    SegRobustError,
    SumMismatchError,
    UnknownKindError,
    UnreadableFileError,
)
from .harness import (
    CLEAN_KIND,
    BaselineMaskSource,
    DocumentMaskSource,
    EvalRun,
    EvalUnit,
    enumerate_units,
    evaluate_corpus,
    evaluate_unit,
)
from .imgcore import BinaryMask, Image, RleMask, mask_area, rle_decode, rle_encode
from .maskalg import (
    OverlapSelection,
    SubMaskSet,
    best_single_mask,
    combine_masks,
    intersection_ratio,
    select_overlapping,
)
from .metrics import (
    MODES,
    EvalRecord,
    GroupReport,
    GroupRow,
    aggregate,
    iou,
    read_records,
    write_records,
)
from .pngio import load_image, load_mask_raster, save_image, save_mask_raster
from .segment import (
    BASELINE_SEGMENTER,
    SCHEMA_VERSION,
    BaselineSegmenter,
    Segmenter,
    baseline_oversegment,
    mask_document_name,
    read_masks,
    write_masks,
)
from .svgplot import severity_chart, write_severity_charts
from .synth import constant_image, make_tool_corpus, natural_test_image

__version__ = "0.1.0"

__all__ = [
    "BinaryMask",
    "Image",
    "RleMask",
    "rle_encode",
    "rle_decode",
    "mask_area",
    "SubMaskSet",
    "OverlapSelection",
    "intersection_ratio",
    "select_overlapping",
    "best_single_mask",
    "combine_masks",
    "iou",
    "EvalRecord",
    "GroupRow",
    "GroupReport",
    "aggregate",
    "severity_chart",
    "write_severity_charts",
    "read_records",
    "write_records",
    "MODES",
    "CORRUPTION_KINDS",
    "GEOMETRIC_KINDS",
    "MAX_SEED",
    "CorruptionSpec",
    "SeverityTable",
    "apply_corruption",
    "distortion_psnr",
    "corrupt_corpus",
    "frame_seed",
    "ManifestRow",
    "Segmenter",
    "BaselineSegmenter",
    "BASELINE_SEGMENTER",
    "SCHEMA_VERSION",
    "baseline_oversegment",
    "write_masks",
    "read_masks",
    "mask_document_name",
    "Corpus",
    "FrameRef",
    "load_corpus",
    "load_gt_mask",
    "CLEAN_KIND",
    "EvalUnit",
    "EvalRun",
    "BaselineMaskSource",
    "DocumentMaskSource",
    "enumerate_units",
    "evaluate_unit",
    "evaluate_corpus",
    "load_image",
    "save_image",
    "load_mask_raster",
    "save_mask_raster",
    "constant_image",
    "natural_test_image",
    "make_tool_corpus",
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

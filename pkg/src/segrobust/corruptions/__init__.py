from .batch import MANIFEST_HEADER, ManifestRow, corrupt_corpus, frame_seed, write_manifest
from .engine import (
    CORRUPTION_KINDS,
    GEOMETRIC_KINDS,
    MAX_SEED,
    CorruptionSpec,
    apply_corruption,
    distortion_psnr,
)
from .severity import DEFAULT_PARAMS, PARAM_SPECS, ParamSpec, SeverityTable

__all__ = [
    "CORRUPTION_KINDS",
    "GEOMETRIC_KINDS",
    "MAX_SEED",
    "MANIFEST_HEADER",
    "DEFAULT_PARAMS",
    "PARAM_SPECS",
    "CorruptionSpec",
    "ManifestRow",
    "ParamSpec",
    "SeverityTable",
    "apply_corruption",
    "corrupt_corpus",
    "distortion_psnr",
    "frame_seed",
    "write_manifest",
]

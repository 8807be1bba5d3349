"""Segmenter boundary: the built-in baseline and the mask interchange files.

The baseline is a small SLIC-flavored k-means over (R, G, B, weighted x,
weighted y) feature vectors, grid-initialized so it needs no randomness,
over-segmenting by construction. External segmenters never call into
Python: they write mask documents (one JSON file per frame) that
`read_masks` ingests, so anything able to emit the document format can
be evaluated.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, runtime_checkable

import numpy as np

from .errors import (
    DuplicateMaskIdError,
    ImageTooSmallError,
    RleError,
    SchemaError,
    UnreadableFileError,
)
from .imgcore import BinaryMask, Image, RleMask, rle_decode, rle_encode
from .maskalg import SubMaskSet

__all__ = [
    "SCHEMA_VERSION",
    "Segmenter",
    "BaselineSegmenter",
    "baseline_oversegment",
    "write_masks",
    "read_masks",
    "mask_document_name",
]

SCHEMA_VERSION = 1

BASELINE_SEGMENTER = "baseline-kmeans/1"

_ASSIGN_CHUNK = 65536


@runtime_checkable
class Segmenter(Protocol):
    """Anything that turns an image into a set of sub-masks."""

    name: str
    version: str

    def segment(self, img: Image, frame_id: str = "") -> SubMaskSet: ...


def _grid_positions(extent: int, cell: int) -> np.ndarray:
    """Cell-center coordinates along one axis, margins balanced."""
    n = max(1, extent // cell)
    offset = (extent - n * cell) / 2.0 + cell / 2.0 - 0.5
    return offset + cell * np.arange(n, dtype=np.float64)


def baseline_oversegment(
    img: Image,
    cell: int = 32,
    iterations: int = 10,
    seed: int = 0,
    spatial_weight: float | None = None,
    frame_id: str = "",
) -> SubMaskSet:
    """Superpixel-style partition of the frame via fixed-iteration k-means.

    Features are (R, G, B, wx, wy) with colors in [0, 1] and pixel
    coordinates scaled by ``spatial_weight`` (default 0.5/cell, the
    usual compactness for this feature scaling; pass 0 to cluster on
    color alone). Centers start on a regular grid of step ``cell``,
    assignment breaks distance ties toward the lowest center index, and
    clusters that end up empty are dropped. Mask ids are the surviving
    centers' original grid indices.

    Grid initialization makes the procedure fully deterministic; the
    ``seed`` argument exists so callers can drive any segmenter through
    one interface, and does not change the output.
    """
    del seed
    h, w = img.height, img.width
    if h < cell or w < cell:
        raise ImageTooSmallError(f"image {w}x{h} is smaller than one {cell}px cell")
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    weight = 0.5 / cell if spatial_weight is None else float(spatial_weight)
    if weight < 0:
        raise ValueError("spatial_weight must be >= 0")

    ys, xs = np.mgrid[0:h, 0:w].astype(np.float64)
    rgb = img.data.reshape(-1, 3).astype(np.float64) / 255.0
    feats = np.column_stack([rgb, (weight * xs).ravel(), (weight * ys).ravel()])

    gy = _grid_positions(h, cell)
    gx = _grid_positions(w, cell)
    cyy, cxx = np.meshgrid(gy, gx, indexing="ij")
    seed_rows = np.rint(cyy).astype(int).ravel()
    seed_cols = np.rint(cxx).astype(int).ravel()
    centers = np.column_stack(
        [
            img.data[seed_rows, seed_cols].astype(np.float64) / 255.0,
            weight * cxx.ravel(),
            weight * cyy.ravel(),
        ]
    )

    assignment = _assign(feats, centers)
    for _ in range(iterations):
        for k in range(centers.shape[0]):
            members = feats[assignment == k]
            if len(members):
                centers[k] = members.mean(axis=0)
        assignment = _assign(feats, centers)

    masks = []
    for k in range(centers.shape[0]):
        bits = (assignment == k).reshape(h, w)
        if bits.any():
            masks.append((k, BinaryMask(bits)))
    return SubMaskSet(frame_id=frame_id, masks=tuple(masks), segmenter=BASELINE_SEGMENTER)


def _assign(feats: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Nearest center per feature row; ties go to the lower center index.

    Squared distances are computed directly from differences (not the
    expanded dot-product form) so that exactly equidistant centers
    produce exactly equal distances and the argmin tie-break is reliable.
    """
    out = np.empty(len(feats), dtype=np.int64)
    for start in range(0, len(feats), _ASSIGN_CHUNK):
        chunk = feats[start : start + _ASSIGN_CHUNK]
        diffs = chunk[:, None, :] - centers[None, :, :]
        out[start : start + _ASSIGN_CHUNK] = np.argmin((diffs * diffs).sum(axis=2), axis=1)
    return out


@dataclass(frozen=True)
class BaselineSegmenter:
    """The built-in segmenter behind the `segment-baseline` command."""

    cell: int = 32
    iterations: int = 10
    seed: int = 0
    spatial_weight: float | None = None
    name: str = "baseline-kmeans"
    version: str = "1"

    def segment(self, img: Image, frame_id: str = "") -> SubMaskSet:
        return baseline_oversegment(
            img,
            cell=self.cell,
            iterations=self.iterations,
            seed=self.seed,
            spatial_weight=self.spatial_weight,
            frame_id=frame_id,
        )


def mask_document_name(frame_stem: str) -> str:
    return f"{frame_stem}.masks.json"


def write_masks(subset: SubMaskSet, path: str | Path, width: int | None = None, height: int | None = None) -> None:
    """One JSON mask document for the set, masks sorted by id, stable bytes.

    An empty set carries no shape of its own, so ``width``/``height``
    must be supplied for it; for non-empty sets they default to the
    masks' shape.
    """
    if len(subset):
        height, width = subset.shape
    if width is None or height is None:
        raise ValueError("width and height are required for an empty set")
    entries = []
    for mask_id, mask in subset:
        rle = rle_encode(mask)
        entries.append({"id": mask_id, "counts": list(rle.counts), "area": mask.area})
    doc = {
        "schema_version": SCHEMA_VERSION,
        "image_id": subset.frame_id,
        "width": width,
        "height": height,
        "segmenter": subset.segmenter,
        "masks": entries,
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, separators=(",", ":"))
        fh.write("\n")


def _require(doc: dict, field: str, types) -> object:
    if field not in doc:
        raise SchemaError(f"mask document missing field {field!r}")
    value = doc[field]
    if not isinstance(value, types) or isinstance(value, bool):
        raise SchemaError(f"mask document field {field!r} has wrong type")
    return value


def read_masks(path: str | Path) -> SubMaskSet:
    """Validated SubMaskSet from a mask document.

    Zero-area masks are legal in the file (external segmenters emit
    them) but useless downstream, so they are dropped here with a
    warning that says how many went missing.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UnreadableFileError(f"cannot read mask document {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"mask document {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"mask document {path} must be a JSON object")

    version = _require(doc, "schema_version", int)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {version}")
    image_id = _require(doc, "image_id", str)
    width = _require(doc, "width", int)
    height = _require(doc, "height", int)
    segmenter = _require(doc, "segmenter", str)
    entries = _require(doc, "masks", list)
    if width <= 0 or height <= 0:
        raise SchemaError(f"mask document {path} has non-positive dimensions")

    seen: set[int] = set()
    masks: list[tuple[int, BinaryMask]] = []
    dropped = 0
    for entry in entries:
        if not isinstance(entry, dict):
            raise SchemaError(f"mask entry in {path} must be a JSON object")
        mask_id = _require(entry, "id", int)
        counts = _require(entry, "counts", list)
        area = _require(entry, "area", int)
        if mask_id in seen:
            raise DuplicateMaskIdError(f"duplicate mask id {mask_id} in {path}")
        seen.add(mask_id)
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in counts):
            raise SchemaError(f"mask {mask_id} in {path}: counts must be integers")
        decoded = rle_decode(RleMask(width=width, height=height, counts=tuple(counts)))
        if decoded.area != area:
            raise SchemaError(
                f"mask {mask_id} in {path}: stored area {area} != decoded area {decoded.area}"
            )
        if area == 0:
            dropped += 1
            continue
        masks.append((mask_id, decoded))
    if dropped:
        warnings.warn(f"{path}: dropped {dropped} zero-area mask(s)", stacklevel=2)
    masks.sort(key=lambda pair: pair[0])
    return SubMaskSet(frame_id=image_id, masks=tuple(masks), segmenter=segmenter)

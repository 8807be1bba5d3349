"""Corpus ingestion: frames paired with ground-truth tool masks.

Expected layout::

    root/
      images/   frame rasters (*.png, *.jpg, *.jpeg)
      gt/       one mask raster per frame, same stem, *.png
      conditions.csv   optional per-frame recording condition + level

Ground truth binarizes as "any nonzero channel value means tool", which
absorbs 0/1, 0/255 and multi-class part encodings alike. A conditions
sidecar marks a corpus whose frames were *captured* under degraded
conditions, so evaluation labels come from the file instead of from the
synthetic corruption grid.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DimensionMismatchError,
    EmptyCorpusError,
    MissingGroundTruthError,
    SchemaError,
    UnreadableFileError,
)
from .imgcore import BinaryMask
from .pngio import IMAGE_SUFFIXES, load_mask_raster
from PIL import Image as PilImage, UnidentifiedImageError

__all__ = ["FrameRef", "Corpus", "load_corpus", "load_gt_mask"]

CONDITIONS_HEADER = ("frame", "condition", "level")


@dataclass(frozen=True)
class FrameRef:
    frame_id: str
    image_path: Path
    gt_path: Path
    condition: str | None = None
    level: int | None = None


@dataclass(frozen=True)
class Corpus:
    name: str
    root: Path
    frames: tuple[FrameRef, ...] = field(default=())

    def __post_init__(self):
        ids = [f.frame_id for f in self.frames]
        if len(set(ids)) != len(ids):
            raise ValueError(f"corpus {self.name!r} has duplicate frame ids")

    def __len__(self) -> int:
        return len(self.frames)

    def __iter__(self):
        return iter(self.frames)

    @property
    def conditioned(self) -> bool:
        """True when frames carry real recording-condition labels."""
        return any(f.condition is not None for f in self.frames)


def _read_conditions(path: Path) -> dict[str, tuple[str, int]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path} is empty") from None
        if tuple(h.strip() for h in header) != CONDITIONS_HEADER:
            raise SchemaError(
                f"{path} must start with header {','.join(CONDITIONS_HEADER)!r}"
            )
        table = {}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise SchemaError(f"{path}:{lineno}: expected 3 columns, got {len(row)}")
            stem, condition, level = (c.strip() for c in row)
            try:
                table[stem] = (condition, int(level))
            except ValueError:
                raise SchemaError(f"{path}:{lineno}: level must be an integer") from None
    return table


def _raster_size(path: Path) -> tuple[int, int]:
    """(width, height) from the file header, pixels left undecoded."""
    try:
        with PilImage.open(path) as im:
            return im.size
    except (OSError, UnidentifiedImageError) as exc:
        raise UnreadableFileError(f"cannot read {path}: {exc}") from exc


def load_corpus(root: str | Path, layout: str = "paired-dirs") -> Corpus:
    """Corpus from ``root``, frames sorted by stem.

    Every image must have a ground-truth raster of the same stem under
    ``gt/`` and matching dimensions; a missing or mis-sized one is an
    error rather than a silent skip so broken annotation gets noticed
    at load time, not deep inside a run.
    """
    if layout != "paired-dirs":
        raise ValueError(f"unknown corpus layout {layout!r}")
    root = Path(root)
    images_dir = root / "images"
    gt_dir = root / "gt"
    if not images_dir.is_dir():
        raise EmptyCorpusError(f"{root} has no images/ directory")
    image_paths = sorted(
        (p for p in images_dir.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES),
        key=lambda p: p.stem,
    )
    if not image_paths:
        raise EmptyCorpusError(f"no images found under {images_dir}")

    conditions_path = root / "conditions.csv"
    conditions = _read_conditions(conditions_path) if conditions_path.is_file() else {}
    stems = {p.stem for p in image_paths}
    phantom = sorted(set(conditions) - stems)
    if phantom:
        raise SchemaError(f"conditions.csv names frames with no image: {phantom}")

    frames = []
    for image_path in image_paths:
        gt_path = gt_dir / f"{image_path.stem}.png"
        if not gt_path.is_file():
            raise MissingGroundTruthError(f"no ground truth for frame {image_path.stem!r}")
        if _raster_size(image_path) != _raster_size(gt_path):
            raise DimensionMismatchError(
                f"frame {image_path.stem!r}: image and ground truth differ in size"
            )
        condition, level = conditions.get(image_path.stem, (None, None))
        frames.append(
            FrameRef(
                frame_id=image_path.stem,
                image_path=image_path,
                gt_path=gt_path,
                condition=condition,
                level=level,
            )
        )
    return Corpus(name=root.name, root=root, frames=tuple(frames))


def load_gt_mask(path: str | Path, expected_dims: tuple[int, int] | None = None) -> BinaryMask:
    """Binarized ground-truth mask, checked against (height, width)."""
    try:
        mask = load_mask_raster(path)
    except UnreadableFileError:
        raise
    if expected_dims is not None and mask.bits.shape != tuple(expected_dims):
        raise DimensionMismatchError(
            f"ground truth {path} is {mask.bits.shape}, expected {tuple(expected_dims)}"
        )
    return mask

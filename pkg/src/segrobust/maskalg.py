"""Consolidation of over-segmented sub-masks against a region of interest.

A segmenter hands back a set of sub-masks for one frame. Selection keeps
the sub-masks whose intersection ratio with the ROI strictly exceeds a
threshold (default one half), and the surviving set is reduced in one of
two ways: the single sub-mask of largest area, or the saturating
pixel-wise union of all survivors. Binary masks cannot exceed one, so
"addition" of masks saturates into a set union.

All functions are pure over immutable inputs and safe to call from
parallel frame workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, EmptySelectionError, EmptySubMaskError
from .imgcore import BinaryMask

__all__ = [
    "SubMaskSet",
    "OverlapSelection",
    "intersection_ratio",
    "select_overlapping",
    "best_single_mask",
    "combine_masks",
]


@dataclass(frozen=True)
class SubMaskSet:
    """The ordered sub-mask output of a segmenter for one frame.

    ``masks`` holds (mask_id, mask) pairs with ids unique and ascending;
    every mask shares one (height, width) and has nonzero area. Zero-area
    masks must be filtered out at ingestion before a set is built.

    ``segmenter`` is a free-form "name/version" provenance string carried
    into evaluation records and interchange documents.
    """

    frame_id: str
    masks: tuple[tuple[int, BinaryMask], ...]
    segmenter: str = ""

    def __post_init__(self):
        object.__setattr__(self, "masks", tuple((int(i), m) for i, m in self.masks))
        ids = [i for i, _ in self.masks]
        if ids != sorted(set(ids)):
            raise ValueError(f"mask ids must be unique and ascending, got {ids}")
        shapes = {m.shape for _, m in self.masks}
        if len(shapes) > 1:
            raise DimensionMismatchError(f"sub-masks disagree on shape: {sorted(shapes)}")
        for i, m in self.masks:
            if m.area == 0:
                raise ValueError(f"sub-mask {i} has zero area; filter empties at ingestion")

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self):
        return iter(self.masks)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.masks)

    @property
    def shape(self) -> tuple[int, int] | None:
        """(height, width) shared by all members, or None for an empty set."""
        return self.masks[0][1].shape if self.masks else None

    def mask(self, mask_id: int) -> BinaryMask:
        for i, m in self.masks:
            if i == mask_id:
                return m
        raise KeyError(f"no sub-mask with id {mask_id}")


@dataclass(frozen=True)
class OverlapSelection:
    """Sub-masks that passed the overlap test, with their ratios.

    ``selected`` is ordered by mask id; every recorded intersection ratio
    strictly exceeds ``threshold``.
    """

    frame_id: str
    threshold: float
    selected: tuple[tuple[int, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must lie in [0, 1], got {self.threshold}")
        for mask_id, ratio in self.selected:
            if not ratio > self.threshold:
                raise ValueError(f"sub-mask {mask_id} recorded ratio {ratio} <= threshold {self.threshold}")

    def __len__(self) -> int:
        return len(self.selected)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.selected)


def intersection_ratio(sub: BinaryMask, roi: BinaryMask) -> float:
    """Fraction of the sub-mask's pixels that lie inside the ROI.

    Computed as |sub AND roi| / |sub|, always within [0, 1].

    Raises:
        DimensionMismatchError: the two masks differ in shape.
        EmptySubMaskError: the sub-mask has zero area, which leaves the
            ratio undefined.
    """
    if sub.shape != roi.shape:
        raise DimensionMismatchError(f"sub-mask {sub.shape} vs roi {roi.shape}")
    area = sub.area
    if area == 0:
        raise EmptySubMaskError("intersection ratio undefined for an empty sub-mask")
    inter = int(np.count_nonzero(sub.bits & roi.bits))
    return inter / area


def select_overlapping(subset: SubMaskSet, roi: BinaryMask, threshold: float = 0.5) -> OverlapSelection:
    """Keep the sub-masks overlapping the ROI.

    A sub-mask overlaps when its intersection ratio is strictly greater
    than ``threshold``; a ratio exactly equal to the threshold is
    excluded. The result preserves mask-id order and may be empty.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must lie in [0, 1], got {threshold}")
    chosen = []
    for mask_id, mask in subset:
        ratio = intersection_ratio(mask, roi)
        if ratio > threshold:
            chosen.append((mask_id, ratio))
    return OverlapSelection(frame_id=subset.frame_id, threshold=threshold, selected=tuple(chosen))


def best_single_mask(selection: OverlapSelection, subset: SubMaskSet) -> BinaryMask:
    """The selected sub-mask of maximum area.

    Area ties break toward the lowest mask id, which keeps the choice
    deterministic across runs and platforms.

    Raises:
        EmptySelectionError: nothing was selected; callers score such
            frames as IoU 0 rather than failing the evaluation.
    """
    if len(selection) == 0:
        raise EmptySelectionError(f"frame {selection.frame_id}: no sub-mask overlaps the ROI")
    best_id = -1
    best_area = -1
    for mask_id, _ in selection.selected:
        area = subset.mask(mask_id).area
        if area > best_area:
            best_id, best_area = mask_id, area
    return subset.mask(best_id)


def combine_masks(selection: OverlapSelection, subset: SubMaskSet) -> BinaryMask:
    """Pixel-wise union of all selected sub-masks.

    Addition of binary masks saturates at one, so the combination is the
    set union; its area is always at least that of the best single mask.

    Raises:
        EmptySelectionError: nothing was selected.
    """
    if len(selection) == 0:
        raise EmptySelectionError(f"frame {selection.frame_id}: no sub-mask overlaps the ROI")
    acc = None
    for mask_id, _ in selection.selected:
        bits = subset.mask(mask_id).bits
        acc = bits.copy() if acc is None else (acc | bits)
    return BinaryMask(acc)

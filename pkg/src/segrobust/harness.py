"""Evaluation pipeline: units, mask sources, record production.

An evaluation unit is one (frame, kind, severity) cell. Grid corpora
get the full synthetic cross product plus one "clean" unit per frame
(severity 0 is scored once, not once per kind, since every kind's level
0 is the same pristine frame). Conditioned corpora — real captures with
a conditions sidecar — get exactly one unit per frame, labeled from the
sidecar.

Masks for a unit come from a MaskSource: either pre-generated documents
or the built-in baseline segmenter run on the matching image. Frames
whose mask source is missing are skipped and itemized, never silently
dropped.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Protocol, Sequence

from .corruptions import CORRUPTION_KINDS
from .dataset import Corpus, FrameRef, load_gt_mask
from .errors import MissingMaskDocumentError
from .imgcore import BinaryMask
from .maskalg import SubMaskSet, best_single_mask, combine_masks, select_overlapping
from .metrics import MODES, EvalRecord, iou
from .pngio import load_image
from .segment import BaselineSegmenter, mask_document_name, read_masks

__all__ = [
    "CLEAN_KIND",
    "EvalUnit",
    "EvalRun",
    "MaskSource",
    "DocumentMaskSource",
    "BaselineMaskSource",
    "enumerate_units",
    "evaluate_unit",
    "evaluate_corpus",
]

CLEAN_KIND = "clean"


@dataclass(frozen=True)
class EvalUnit:
    frame: FrameRef
    kind: str
    severity: int


@dataclass(frozen=True)
class EvalRun:
    records: tuple[EvalRecord, ...]
    skips: tuple[str, ...]


class MaskSource(Protocol):
    def submasks(self, unit: EvalUnit) -> SubMaskSet: ...


def _tree_path(root: Path, unit: EvalUnit, filename: str) -> Path:
    return root / unit.kind / f"s{unit.severity}" / filename


@dataclass(frozen=True)
class DocumentMaskSource:
    """Mask documents written by an external segmenter (or a prior run).

    Grid corpora mirror the corrupted-image tree
    (``<root>/<kind>/s<severity>/<stem>.masks.json``, with clean frames
    under ``clean/s0/``); conditioned corpora keep documents flat beside
    the images, one per frame.
    """

    masks_root: Path
    conditioned: bool = False

    def submasks(self, unit: EvalUnit) -> SubMaskSet:
        name = mask_document_name(unit.frame.frame_id)
        if self.conditioned:
            path = self.masks_root / name
        else:
            path = _tree_path(self.masks_root, unit, name)
        if not path.is_file():
            raise MissingMaskDocumentError(f"missing mask document {path}")
        return read_masks(path)


@dataclass(frozen=True)
class BaselineMaskSource:
    """Built-in segmenter run inline on the unit's image.

    Clean units and conditioned corpora segment the corpus image itself;
    synthetic units need the corrupted frame from ``images_root`` (the
    output tree of a corrupt run).
    """

    segmenter: BaselineSegmenter
    images_root: Path | None = None
    conditioned: bool = False

    def submasks(self, unit: EvalUnit) -> SubMaskSet:
        if self.conditioned or unit.kind == CLEAN_KIND:
            path = unit.frame.image_path
        else:
            if self.images_root is None:
                raise MissingMaskDocumentError(
                    f"no corrupted-image root configured, needed for "
                    f"{unit.kind}/s{unit.severity}/{unit.frame.frame_id}"
                )
            path = _tree_path(self.images_root, unit, f"{unit.frame.frame_id}.png")
        if not path.is_file():
            raise MissingMaskDocumentError(f"missing image {path}")
        return self.segmenter.segment(load_image(path), frame_id=unit.frame.frame_id)


def enumerate_units(
    corpus: Corpus,
    kinds: Iterable[str] | None = None,
    severities: Iterable[int] | None = None,
) -> list[EvalUnit]:
    """Evaluation units for the corpus, in deterministic order.

    ``kinds``/``severities`` filter what gets evaluated; None means
    everything. On conditioned corpora they filter the sidecar labels;
    frames absent from the sidecar count as clean level 0.
    """
    kind_filter = None if kinds is None else set(kinds)
    severity_filter = None if severities is None else set(severities)

    units = []
    if corpus.conditioned:
        for frame in corpus:
            kind = frame.condition if frame.condition is not None else CLEAN_KIND
            level = frame.level if frame.level is not None else 0
            if kind_filter is not None and kind not in kind_filter:
                continue
            if severity_filter is not None and level not in severity_filter:
                continue
            units.append(EvalUnit(frame=frame, kind=kind, severity=level))
        units.sort(key=lambda u: (u.kind, u.severity, u.frame.frame_id))
        return units

    grid_kinds = sorted(CORRUPTION_KINDS if kind_filter is None else kind_filter)
    grid_severities = sorted(range(6) if severity_filter is None else severity_filter)
    include_clean = 0 in grid_severities
    corrupt_severities = [s for s in grid_severities if s > 0]
    for frame in corpus:
        if include_clean:
            units.append(EvalUnit(frame=frame, kind=CLEAN_KIND, severity=0))
        for kind in grid_kinds:
            for severity in corrupt_severities:
                units.append(EvalUnit(frame=frame, kind=kind, severity=severity))
    units.sort(key=lambda u: (u.kind, u.severity, u.frame.frame_id))
    return units


def evaluate_unit(
    unit: EvalUnit,
    subset: SubMaskSet,
    gt: BinaryMask,
    modes: Sequence[str] = MODES,
    threshold: float = 0.5,
) -> list[EvalRecord]:
    """One record per mode for this unit; empty selections score 0."""
    selection = select_overlapping(subset, gt, threshold)
    records = []
    for mode in modes:
        if len(selection) == 0:
            score = 0.0
        elif mode == "single":
            score = iou(best_single_mask(selection, subset), gt)
        else:
            score = iou(combine_masks(selection, subset), gt)
        records.append(
            EvalRecord(
                frame_id=unit.frame.frame_id,
                kind=unit.kind,
                severity=unit.severity,
                mode=mode,
                iou=score,
                n_submasks=len(subset),
                n_selected=len(selection),
                segmenter=subset.segmenter,
            )
        )
    return records


def _expand_modes(modes: str | Sequence[str]) -> tuple[str, ...]:
    if isinstance(modes, str):
        modes = MODES if modes == "both" else (modes,)
    out = tuple(modes)
    if not out:
        raise ValueError("modes must be non-empty")
    for mode in out:
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
    return out


def evaluate_corpus(
    corpus: Corpus,
    mask_source: MaskSource,
    kinds: Iterable[str] | None = None,
    severities: Iterable[int] | None = None,
    modes: str | Sequence[str] = "both",
    threshold: float = 0.5,
    workers: int = 1,
) -> EvalRun:
    """Records for every unit of the corpus, sorted, plus itemized skips.

    Frames are processed in parallel when ``workers`` > 1; records and
    skips are sorted before returning, so output bytes do not depend on
    the worker count.
    """
    mode_tuple = _expand_modes(modes)
    units = enumerate_units(corpus, kinds, severities)

    by_frame: dict[str, list[EvalUnit]] = {}
    for unit in units:
        by_frame.setdefault(unit.frame.frame_id, []).append(unit)

    def frame_task(frame_units: list[EvalUnit]) -> tuple[list[EvalRecord], list[str]]:
        gt = load_gt_mask(frame_units[0].frame.gt_path)
        records: list[EvalRecord] = []
        skips: list[str] = []
        for unit in frame_units:
            try:
                subset = mask_source.submasks(unit)
            except MissingMaskDocumentError as exc:
                skips.append(str(exc))
                continue
            records.extend(evaluate_unit(unit, subset, gt, mode_tuple, threshold))
        return records, skips

    groups = list(by_frame.values())
    records: list[EvalRecord] = []
    skips: list[str] = []
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(frame_task, groups))
    else:
        results = [frame_task(g) for g in groups]
    for frame_records, frame_skips in results:
        records.extend(frame_records)
        skips.extend(frame_skips)

    records.sort(key=lambda r: (r.kind, r.severity, r.frame_id, r.mode))
    skips.sort()
    return EvalRun(records=tuple(records), skips=tuple(skips))

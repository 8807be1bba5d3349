"""Per-frame IoU and grouped aggregation.

One evaluation record is emitted per (frame, corruption kind, severity,
consolidation mode); reports average the IoU per group with every frame
weighted equally. Records stream as JSON lines; group reports serialize
as CSV with the fixed header ``kind,severity,mode,mean_iou,frame_count``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import DimensionMismatchError
from .imgcore import BinaryMask

__all__ = [
    "MODES",
    "EvalRecord",
    "GroupRow",
    "GroupReport",
    "iou",
    "aggregate",
    "write_records",
    "read_records",
]

MODES = ("single", "combined")

REPORT_HEADER = "kind,severity,mode,mean_iou,frame_count"


def iou(pred: BinaryMask, gt: BinaryMask) -> float:
    """Intersection over union of two masks.

    Defined as 1.0 when both masks are empty (perfect agreement on
    absence) and 0.0 when exactly one is empty.

    Raises:
        DimensionMismatchError: the masks differ in shape.
    """
    if pred.shape != gt.shape:
        raise DimensionMismatchError(f"pred {pred.shape} vs gt {gt.shape}")
    inter = int(np.count_nonzero(pred.bits & gt.bits))
    union = int(np.count_nonzero(pred.bits | gt.bits))
    if union == 0:
        return 1.0
    return inter / union


@dataclass(frozen=True)
class EvalRecord:
    """One scored evaluation unit.

    ``kind`` is a synthetic corruption name, a real-corruption condition
    label, or "clean" for uncorrupted frames. ``segmenter`` carries the
    producing segmenter's name/version provenance.
    """

    frame_id: str
    kind: str
    severity: int
    mode: str
    iou: float
    n_submasks: int
    n_selected: int
    segmenter: str = ""

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not 0 <= self.severity <= 5:
            raise ValueError(f"severity must lie in 0..5, got {self.severity}")
        if not 0.0 <= self.iou <= 1.0:
            raise ValueError(f"iou must lie in [0, 1], got {self.iou}")
        if self.n_selected > self.n_submasks:
            raise ValueError(f"n_selected {self.n_selected} exceeds n_submasks {self.n_submasks}")

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "EvalRecord":
        return cls(**json.loads(line))


@dataclass(frozen=True)
class GroupRow:
    kind: str
    severity: int
    mode: str
    mean_iou: float
    frame_count: int


@dataclass(frozen=True)
class GroupReport:
    """Mean IoU per (kind, severity, mode) group, rows pre-sorted."""

    rows: tuple[GroupRow, ...]

    def to_csv(self) -> str:
        lines = [REPORT_HEADER]
        for r in self.rows:
            lines.append(f"{r.kind},{r.severity},{r.mode},{r.mean_iou!r},{r.frame_count}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps([asdict(r) for r in self.rows], separators=(",", ":"), indent=None)

    def row(self, kind: str, severity: int, mode: str) -> GroupRow:
        for r in self.rows:
            if (r.kind, r.severity, r.mode) == (kind, severity, mode):
                return r
        raise KeyError(f"no group ({kind}, {severity}, {mode})")


def aggregate(records: Iterable[EvalRecord]) -> GroupReport:
    """Arithmetic mean of IoU per (kind, severity, mode) group.

    Records are summed in frame-id order inside each group, so the report
    is bit-identical under any permutation of the input. Empty input
    yields an empty report.
    """
    ordered = sorted(records, key=lambda r: r.frame_id)
    sums: dict[tuple[str, int, str], float] = {}
    counts: dict[tuple[str, int, str], int] = {}
    for rec in ordered:
        key = (rec.kind, rec.severity, rec.mode)
        sums[key] = sums.get(key, 0.0) + rec.iou
        counts[key] = counts.get(key, 0) + 1
    rows = tuple(
        GroupRow(kind=k, severity=s, mode=m, mean_iou=sums[(k, s, m)] / counts[(k, s, m)], frame_count=counts[(k, s, m)])
        for k, s, m in sorted(sums)
    )
    return GroupReport(rows=rows)


def write_records(records: Iterable[EvalRecord], path: str | Path) -> None:
    """Write records as JSON lines, one record per line."""
    text = "".join(r.to_json() + "\n" for r in records)
    Path(path).write_text(text, encoding="utf-8")


def read_records(path: str | Path) -> list[EvalRecord]:
    """Read a JSON-lines record stream."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [EvalRecord.from_json(line) for line in lines if line.strip()]

"""Batch corruption of an image directory.

Writes one PNG per (frame, kind, severity) under
``<out>/<kind>/s<severity>/<frame_stem>.png`` plus a manifest CSV
listing every artifact with its spec and content hash. Frames may be
processed in parallel; rows are sorted before writing so the manifest
does not depend on scheduling.
"""

from __future__ import annotations

import csv
import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from ..errors import EmptyCorpusError
from ..pngio import IMAGE_SUFFIXES, load_image, save_image
from .engine import MAX_SEED, CorruptionSpec, apply_corruption
from .severity import SeverityTable

__all__ = ["ManifestRow", "MANIFEST_HEADER", "frame_seed", "corrupt_corpus", "write_manifest"]

MANIFEST_HEADER = ("frame", "kind", "severity", "seed", "path", "sha256")


@dataclass(frozen=True)
class ManifestRow:
    frame: str
    kind: str
    severity: int
    seed: int
    path: str
    sha256: str


def frame_seed(master_seed: int, frame_stem: str) -> int:
    """Per-frame seed derived from the master seed and the frame name.

    Hash-derived rather than sequential so the value for one frame does
    not depend on which other frames are in the corpus.
    """
    material = f"segrobust.frame|{master_seed}|{frame_stem}"
    digest = hashlib.blake2b(material.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little") & MAX_SEED


def list_frames(input_dir: str | Path) -> list[Path]:
    input_dir = Path(input_dir)
    frames = sorted(p for p in input_dir.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES)
    if not frames:
        raise EmptyCorpusError(f"no images found in {input_dir}")
    return frames


def _corrupt_frame(
    frame: Path,
    output_dir: Path,
    kinds: Sequence[str],
    severities: Sequence[int],
    master_seed: int,
    table: SeverityTable,
) -> list[ManifestRow]:
    img = load_image(frame)
    seed = frame_seed(master_seed, frame.stem)
    rows = []
    for kind in kinds:
        for severity in severities:
            spec = CorruptionSpec(kind=kind, severity=severity, seed=seed)
            out = apply_corruption(img, spec, table)
            rel = Path(kind) / f"s{severity}" / f"{frame.stem}.png"
            target = output_dir / rel
            save_image(out, target)
            digest = hashlib.sha256(target.read_bytes()).hexdigest()
            rows.append(
                ManifestRow(
                    frame=frame.stem,
                    kind=kind,
                    severity=severity,
                    seed=seed,
                    path=rel.as_posix(),
                    sha256=digest,
                )
            )
    return rows


def corrupt_corpus(
    input_dir: str | Path,
    output_dir: str | Path,
    kinds: Iterable[str],
    severities: Iterable[int],
    seed: int,
    table: SeverityTable | None = None,
    workers: int = 1,
) -> list[ManifestRow]:
    """Corrupt every image in ``input_dir``; returns the manifest rows.

    Also writes ``manifest.csv`` in ``output_dir``. An empty kind or
    severity set yields an empty manifest and no image files.
    """
    output_dir = Path(output_dir)
    kinds = sorted(set(kinds))
    severities = sorted(set(severities))
    if table is None:
        table = SeverityTable.default()
    frames = list_frames(input_dir)

    rows: list[ManifestRow] = []
    if kinds and severities:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                chunks = pool.map(
                    lambda f: _corrupt_frame(f, output_dir, kinds, severities, seed, table),
                    frames,
                )
                for chunk in chunks:
                    rows.extend(chunk)
        else:
            for frame in frames:
                rows.extend(_corrupt_frame(frame, output_dir, kinds, severities, seed, table))
    rows.sort(key=lambda r: (r.frame, r.kind, r.severity))
    write_manifest(rows, output_dir / "manifest.csv")
    return rows


def write_manifest(rows: Sequence[ManifestRow], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(MANIFEST_HEADER)
        for row in rows:
            writer.writerow([row.frame, row.kind, row.severity, row.seed, row.path, row.sha256])

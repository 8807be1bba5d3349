"""Command line entry points.

Four subcommands chain into the benchmark pipeline:

    segrobust corrupt          write corrupted image trees + manifest
    segrobust segment-baseline write mask documents with the built-in segmenter
    segrobust evaluate         consolidate masks against GT, emit records
    segrobust report           aggregate records to CSV/JSON and SVG charts

Exit codes: 0 clean, 2 completed with skips (itemized on stderr),
1 fatal error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .corruptions import CORRUPTION_KINDS, MAX_SEED, SeverityTable, corrupt_corpus
from .dataset import load_corpus
from .errors import NoRecordsError, SegRobustError
from .harness import BaselineMaskSource, DocumentMaskSource, evaluate_corpus
from .metrics import aggregate, read_records, write_records
from .pngio import IMAGE_SUFFIXES, load_image
from .segment import BaselineSegmenter, mask_document_name, write_masks
from .svgplot import write_severity_charts

__all__ = ["RunConfig", "cmd_corrupt", "cmd_segment_baseline", "cmd_evaluate", "cmd_report", "main"]

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_SKIPS = 2


@dataclass(frozen=True)
class RunConfig:
    """Everything one subcommand invocation needs."""

    corpus: Path | None = None
    images: Path | None = None
    masks: str = "baseline"
    out: Path = Path(".")
    kinds: tuple[str, ...] | None = None
    severities: tuple[int, ...] | None = None
    modes: str = "both"
    threshold: float = 0.5
    seed: int = 0
    workers: int = 1
    severity_config: Path | None = None
    fmt: str = "csv"
    plot_svg: Path | None = None
    records: Path | None = None
    cell: int = 32
    iterations: int = 10
    spatial_weight: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError("threshold must lie in [0, 1]")
        if self.modes not in ("single", "combined", "both"):
            raise ValueError(f"modes must be single, combined or both, got {self.modes!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not 0 <= self.seed <= MAX_SEED:
            raise ValueError("seed must be a 64-bit unsigned integer")


def _severity_table(cfg: RunConfig) -> SeverityTable:
    if cfg.severity_config is not None:
        return SeverityTable.from_file(cfg.severity_config)
    return SeverityTable.default()


def cmd_corrupt(cfg: RunConfig) -> int:
    """Corrupt a directory of frames into <out>/<kind>/s<severity>/ trees."""
    if cfg.images is not None:
        input_dir = cfg.images
    elif cfg.corpus is not None:
        input_dir = cfg.corpus / "images"
    else:
        raise SegRobustError("corrupt needs --images or --corpus")
    kinds = CORRUPTION_KINDS if cfg.kinds is None else cfg.kinds
    severities = (1, 2, 3, 4, 5) if cfg.severities is None else cfg.severities
    rows = corrupt_corpus(
        input_dir,
        cfg.out,
        kinds=kinds,
        severities=severities,
        seed=cfg.seed,
        table=_severity_table(cfg),
        workers=cfg.workers,
    )
    print(f"wrote {len(rows)} corrupted frames under {cfg.out} (manifest.csv included)")
    return EXIT_OK


def cmd_segment_baseline(cfg: RunConfig) -> int:
    """Run the built-in segmenter over an image tree, mirroring documents.

    Every raster below --images gets a sibling-structured
    <out>/<same relative dirs>/<stem>.masks.json document.
    """
    if cfg.images is not None:
        input_dir = cfg.images
    elif cfg.corpus is not None:
        input_dir = cfg.corpus / "images"
    else:
        raise SegRobustError("segment-baseline needs --images or --corpus")
    segmenter = BaselineSegmenter(
        cell=cfg.cell,
        iterations=cfg.iterations,
        seed=cfg.seed,
        spatial_weight=cfg.spatial_weight,
    )
    paths = sorted(
        p for p in Path(input_dir).rglob("*") if p.suffix.lower() in IMAGE_SUFFIXES
    )
    if not paths:
        raise SegRobustError(f"no images found under {input_dir}")
    count = 0
    for path in paths:
        img = load_image(path)
        subset = segmenter.segment(img, frame_id=path.stem)
        rel = path.relative_to(input_dir).parent
        write_masks(subset, cfg.out / rel / mask_document_name(path.stem))
        count += 1
    print(f"wrote {count} mask documents under {cfg.out}")
    return EXIT_OK


def cmd_evaluate(cfg: RunConfig) -> int:
    """Score every (frame, kind, severity) unit in both modes."""
    if cfg.corpus is None:
        raise SegRobustError("evaluate needs --corpus")
    corpus = load_corpus(cfg.corpus)
    if cfg.masks == "baseline":
        source = BaselineMaskSource(
            segmenter=BaselineSegmenter(
                cell=cfg.cell,
                iterations=cfg.iterations,
                seed=cfg.seed,
                spatial_weight=cfg.spatial_weight,
            ),
            images_root=cfg.images,
            conditioned=corpus.conditioned,
        )
    else:
        source = DocumentMaskSource(masks_root=Path(cfg.masks), conditioned=corpus.conditioned)
    run = evaluate_corpus(
        corpus,
        source,
        kinds=cfg.kinds,
        severities=cfg.severities,
        modes=cfg.modes,
        threshold=cfg.threshold,
        workers=cfg.workers,
    )
    write_records(run.records, cfg.out)
    print(f"wrote {len(run.records)} records to {cfg.out}")
    if run.skips:
        print(f"skipped {len(run.skips)} unit(s):", file=sys.stderr)
        for skip in run.skips:
            print(f"  {skip}", file=sys.stderr)
        return EXIT_SKIPS
    return EXIT_OK


def cmd_report(cfg: RunConfig) -> int:
    """Aggregate a records file into a grouped report (and optional charts)."""
    if cfg.records is None:
        raise SegRobustError("report needs --records")
    records = read_records(cfg.records)
    if not records:
        raise NoRecordsError(f"no records in {cfg.records}")
    report = aggregate(records)
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    if cfg.fmt == "json":
        cfg.out.write_text(report.to_json() + "\n", encoding="utf-8")
    else:
        cfg.out.write_text(report.to_csv(), encoding="utf-8")
    print(f"wrote {len(report.rows)} report rows to {cfg.out}")
    if cfg.plot_svg is not None:
        written = write_severity_charts(report, cfg.plot_svg)
        print(f"wrote {len(written)} charts under {cfg.plot_svg}")
    return EXIT_OK


def _parse_kinds(text: str) -> tuple[str, ...] | None:
    if text == "all":
        return None
    kinds = tuple(t.strip() for t in text.split(",") if t.strip())
    if not kinds:
        raise argparse.ArgumentTypeError("empty kind list")
    return kinds


def _parse_severities(text: str) -> tuple[int, ...] | None:
    if text == "all":
        return None
    out: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if "-" in token:
            lo, _, hi = token.partition("-")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(token))
    if not out:
        raise argparse.ArgumentTypeError("empty severity list")
    return tuple(sorted(set(out)))


def _default_seed() -> int:
    return int(os.environ.get("SEGROBUST_SEED", "0"))


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="master seed (default: $SEGROBUST_SEED or 0)")
    parser.add_argument("--workers", type=int, default=1)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="segrobust",
        description="Robustness benchmark for over-segmenting zero-shot segmenters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("corrupt", help="write corrupted copies of a frame directory")
    p.add_argument("--corpus", type=Path, help="corpus root (frames under images/)")
    p.add_argument("--images", type=Path, help="raw image directory (overrides --corpus)")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--kinds", type=_parse_kinds, default=None, help="comma list or 'all'")
    p.add_argument("--severities", type=_parse_severities, default=None, help="e.g. '1-5' or '1,3'")
    p.add_argument("--severity-config", type=Path, default=None, help="TOML overrides for parameter tables")
    _add_common(p)

    p = sub.add_parser("segment-baseline", help="write baseline mask documents for an image tree")
    p.add_argument("--corpus", type=Path)
    p.add_argument("--images", type=Path, help="image tree to segment (overrides --corpus)")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--cell", type=int, default=32)
    p.add_argument("--iterations", type=int, default=10)
    p.add_argument("--spatial-weight", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("evaluate", help="score consolidated masks against ground truth")
    p.add_argument("--corpus", type=Path, required=True)
    p.add_argument("--masks", default="baseline", help="mask-document root, or 'baseline' for the built-in segmenter")
    p.add_argument("--images", type=Path, default=None, help="corrupted-image tree (needed with --masks baseline)")
    p.add_argument("--out", type=Path, required=True, help="records file (JSON lines)")
    p.add_argument("--kinds", type=_parse_kinds, default=None)
    p.add_argument("--severities", type=_parse_severities, default=None)
    p.add_argument("--modes", choices=("single", "combined", "both"), default="both")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--cell", type=int, default=32)
    p.add_argument("--iterations", type=int, default=10)
    p.add_argument("--spatial-weight", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("report", help="aggregate records into grouped mean IoU")
    p.add_argument("--records", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--plot-svg", type=Path, default=None, help="directory for per-kind severity charts")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {}
    mapping = {
        "corpus": "corpus",
        "images": "images",
        "masks": "masks",
        "out": "out",
        "kinds": "kinds",
        "severities": "severities",
        "modes": "modes",
        "threshold": "threshold",
        "workers": "workers",
        "severity_config": "severity_config",
        "format": "fmt",
        "plot_svg": "plot_svg",
        "records": "records",
        "cell": "cell",
        "iterations": "iterations",
        "spatial_weight": "spatial_weight",
    }
    for arg_name, cfg_name in mapping.items():
        if hasattr(args, arg_name) and getattr(args, arg_name) is not None:
            fields[cfg_name] = getattr(args, arg_name)
    seed = getattr(args, "seed", None)
    fields["seed"] = seed if seed is not None else _default_seed()
    return RunConfig(**fields)


_COMMANDS = {
    "corrupt": cmd_corrupt,
    "segment-baseline": cmd_segment_baseline,
    "evaluate": cmd_evaluate,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _COMMANDS[args.command](cfg)
    except (SegRobustError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())

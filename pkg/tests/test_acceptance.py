"""Acceptance suite: the headline guarantees, each printed as one verdict line.

Every test here checks a whole guarantee end to end and reports it as

    [acceptance] <name>: PASS|FAIL (<elapsed> s)

so a bare ``pytest tests/test_acceptance.py -q`` reads as a checklist.
Budgets are asserted alongside correctness; a slow pass is a fail.
"""

import csv
import hashlib
import time
from types import SimpleNamespace

import numpy as np
import pytest

import oracles
from segrobust import (
    CORRUPTION_KINDS,
    GEOMETRIC_KINDS,
    BinaryMask,
    CorruptionSpec,
    EvalUnit,
    SubMaskSet,
    apply_corruption,
    best_single_mask,
    combine_masks,
    distortion_psnr,
    evaluate_unit,
    intersection_ratio,
    iou,
    make_tool_corpus,
    mask_area,
    natural_test_image,
    rle_decode,
    rle_encode,
    select_overlapping,
)
from segrobust.cli import EXIT_OK, main


def _verdict(capsys, name, problems, elapsed):
    ok = not problems
    with capsys.disabled():
        print(f"\n[acceptance] {name}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f} s)")
    assert ok, f"{name}: " + "; ".join(problems[:10])


@pytest.fixture(scope="session")
def tool_corpus_root(tmp_path_factory):
    root = tmp_path_factory.mktemp("tool") / "corpus"
    make_tool_corpus(root, n_frames=20, size=128, seed=0)
    return root


def test_mask_algebra_matches_pixel_loop_oracles(capsys):
    t0 = time.monotonic()
    rng = np.random.default_rng(20240817)
    problems = []
    n_masks = 0
    for _ in range(5000):
        h = int(rng.integers(1, 65))
        w = int(rng.integers(1, 65))
        a = rng.random((h, w)) < rng.uniform(0.05, 0.95)
        b = rng.random((h, w)) < rng.uniform(0.05, 0.95)
        if not a.any():
            a[int(rng.integers(h)), int(rng.integers(w))] = True
        n_masks += 2
        la, lb = a.tolist(), b.tolist()
        ma, mb = BinaryMask(a), BinaryMask(b)
        for mask, listed in ((ma, la), (mb, lb)):
            if mask_area(mask) != oracles.area(listed):
                problems.append(f"area mismatch on {mask.shape}")
            rle = rle_encode(mask)
            if list(rle.counts) != oracles.rle_counts(listed):
                problems.append(f"rle counts mismatch on {mask.shape}")
            if not np.array_equal(rle_decode(rle).bits, mask.bits):
                problems.append(f"rle round trip broke on {mask.shape}")
        if abs(iou(ma, mb) - oracles.iou(la, lb)) >= 1e-12:
            problems.append(f"iou mismatch on {a.shape}")
        if abs(intersection_ratio(ma, mb) - oracles.intersection_ratio(la, lb)) >= 1e-12:
            problems.append(f"intersection ratio mismatch on {a.shape}")
        if problems:
            break
    elapsed = time.monotonic() - t0
    if n_masks < 10_000:
        problems.append(f"only {n_masks} masks checked")
    if elapsed >= 60:
        problems.append(f"took {elapsed:.1f} s, budget 60 s")
    _verdict(capsys, "mask-algebra-oracles", problems, elapsed)


def _disjoint_config(rng):
    """A ground truth plus pairwise-disjoint sub-masks, all overlapping past 1/2.

    Sub-masks are built from disjoint chunks of ground-truth pixels; each
    chunk may annex strictly fewer outside pixels than it has inside ones,
    which keeps every intersection ratio above 1/2 by construction.
    """
    h = int(rng.integers(8, 29))
    w = int(rng.integers(8, 29))
    gt = rng.random((h, w)) < rng.uniform(0.2, 0.8)
    if not gt.any():
        gt[int(rng.integers(h)), int(rng.integers(w))] = True
    inside = rng.permutation(np.flatnonzero(gt.ravel()))
    outside = rng.permutation(np.flatnonzero(~gt.ravel()))
    k = int(rng.integers(1, 6))
    masks = []
    pos = 0
    for i, chunk in enumerate(np.array_split(inside, k)):
        if chunk.size == 0:
            continue
        annex = int(rng.integers(0, chunk.size))
        annex = min(annex, outside.size - pos)
        flat = np.zeros(h * w, dtype=bool)
        flat[chunk] = True
        flat[outside[pos : pos + annex]] = True
        pos += annex
        masks.append((i, BinaryMask(flat.reshape(h, w))))
    return BinaryMask(gt), SubMaskSet(frame_id="cfg", masks=tuple(masks))


def test_combined_never_loses_to_single_on_disjoint_submasks(capsys):
    t0 = time.monotonic()
    rng = np.random.default_rng(7)
    problems = []
    n_configs = 10_000
    for i in range(n_configs):
        gt, subset = _disjoint_config(rng)
        selection = select_overlapping(subset, gt, threshold=0.5)
        if len(selection.selected) != len(subset.ids):
            problems.append(f"config {i}: construction failed to clear threshold")
            break
        single = iou(best_single_mask(selection, subset), gt)
        combined = iou(combine_masks(selection, subset), gt)
        if combined < single:
            problems.append(f"config {i}: combined {combined!r} < single {single!r}")
            break
    elapsed = time.monotonic() - t0
    if elapsed >= 60:
        problems.append(f"took {elapsed:.1f} s, budget 60 s")
    _verdict(capsys, "consolidation-monotonicity", problems, elapsed)


def test_worked_example_scores_exactly(capsys):
    t0 = time.monotonic()
    problems = []
    # 4x5 frame: ground truth fills rows 0-1 (10 px); sub-mask A covers six
    # of them; sub-mask B covers three more plus one background pixel.
    gt = np.zeros((4, 5), dtype=bool)
    gt[0] = True
    gt[1] = True
    a = np.zeros((4, 5), dtype=bool)
    a[0] = True
    a[1, 0] = True
    b = np.zeros((4, 5), dtype=bool)
    b[1, 1:4] = True
    b[2, 0] = True
    subset = SubMaskSet(frame_id="worked", masks=((0, BinaryMask(a)), (1, BinaryMask(b))))
    unit = EvalUnit(frame=SimpleNamespace(frame_id="worked"), kind="clean", severity=0)
    single, combined = evaluate_unit(unit, subset, BinaryMask(gt))
    if single.iou != 6 / 10:
        problems.append(f"single iou {single.iou!r} != 0.6")
    if combined.iou != 9 / 11:
        problems.append(f"combined iou {combined.iou!r} != 9/11")
    if (single.n_submasks, single.n_selected) != (2, 2):
        problems.append("selection did not keep both sub-masks")
    _verdict(capsys, "worked-example", problems, time.monotonic() - t0)


def test_corruptions_deterministic_and_monotonically_degrading(capsys):
    t0 = time.monotonic()
    img = natural_test_image(256, seed=0)
    problems = []
    for kind in CORRUPTION_KINDS:
        zero = apply_corruption(img, CorruptionSpec(kind=kind, severity=0, seed=3))
        if not np.array_equal(zero.data, img.data):
            problems.append(f"{kind}: severity 0 not bit-identical")
        psnrs = []
        for severity in range(1, 6):
            spec = CorruptionSpec(kind=kind, severity=severity, seed=3)
            out = apply_corruption(img, spec)
            again = apply_corruption(img, spec)
            first = hashlib.sha256(out.data.tobytes()).hexdigest()
            second = hashlib.sha256(again.data.tobytes()).hexdigest()
            if first != second:
                problems.append(f"{kind} s{severity}: repeated run hash differs")
            psnrs.append(distortion_psnr(img, out))
        for s in range(4):
            lo, hi = psnrs[s + 1], psnrs[s]
            if kind in GEOMETRIC_KINDS:
                if lo > hi:
                    problems.append(f"{kind}: psnr rose s{s + 1}->s{s + 2} ({hi:.2f}->{lo:.2f})")
            elif lo >= hi:
                problems.append(f"{kind}: psnr not strictly falling s{s + 1}->s{s + 2}")
    elapsed = time.monotonic() - t0
    if elapsed >= 300:
        problems.append(f"took {elapsed:.1f} s, budget 300 s")
    _verdict(capsys, "corruption-determinism-calibration", problems, elapsed)


def _read_report(path):
    rows = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            key = (row["kind"], int(row["severity"]), row["mode"])
            rows[key] = (float(row["mean_iou"]), int(row["frame_count"]))
    return rows


def test_end_to_end_trend_on_synthetic_corpus(capsys, tool_corpus_root, tmp_path):
    t0 = time.monotonic()
    problems = []
    corrupted = tmp_path / "corrupted"
    records = tmp_path / "records.jsonl"
    report = tmp_path / "report.csv"
    base = ["--seed", "11", "--workers", "2"]
    if main(["corrupt", "--corpus", str(tool_corpus_root), "--out", str(corrupted), *base]) != EXIT_OK:
        problems.append("corrupt subcommand failed")
    seg = ["--cell", "32", "--spatial-weight", "0"]
    if not problems and main(
        ["evaluate", "--corpus", str(tool_corpus_root), "--masks", "baseline",
         "--images", str(corrupted), "--out", str(records), *seg, *base]
    ) != EXIT_OK:
        problems.append("evaluate subcommand failed")
    if not problems and main(["report", "--records", str(records), "--out", str(report)]) != EXIT_OK:
        problems.append("report subcommand failed")

    if not problems:
        rows = _read_report(report)
        if len(rows) != 18 * 5 * 2 + 2:
            problems.append(f"expected 182 report rows, got {len(rows)}")
        if any(count != 20 for _, count in rows.values()):
            problems.append("some group saw fewer than 20 frames")
        for kind in CORRUPTION_KINDS:
            for severity in range(1, 6):
                single, _ = rows[(kind, severity, "single")]
                combined, _ = rows[(kind, severity, "combined")]
                if combined < single - 1e-9:
                    problems.append(
                        f"{kind} s{severity}: combined {combined:.4f} < single {single:.4f}"
                    )
        for mode in ("single", "combined"):
            clean, _ = rows[("clean", 0, mode)]
            if clean < 0.90:
                problems.append(f"clean {mode} mean IoU {clean:.4f} < 0.90")
    elapsed = time.monotonic() - t0
    if elapsed >= 600:
        problems.append(f"took {elapsed:.1f} s, budget 600 s")
    _verdict(capsys, "end-to-end-trend", problems, elapsed)


def test_pipeline_outputs_are_byte_identical_across_runs(capsys, tool_corpus_root, tmp_path):
    t0 = time.monotonic()
    problems = []
    grid = ["--kinds", "gaussian_noise,fog,pixelate,elastic_transform", "--severities", "1,3,5"]
    outputs = {}
    for label, workers in (("a", "1"), ("b", "3")):
        corrupted = tmp_path / label / "corrupted"
        records = tmp_path / label / "records.jsonl"
        report = tmp_path / label / "report.csv"
        run = ["--seed", "29", "--workers", workers]
        ok = (
            main(["corrupt", "--corpus", str(tool_corpus_root), "--out", str(corrupted), *grid, *run]) == EXIT_OK
            and main(
                ["evaluate", "--corpus", str(tool_corpus_root), "--masks", "baseline",
                 "--images", str(corrupted), "--out", str(records),
                 "--cell", "32", "--spatial-weight", "0", *grid, *run]
            ) == EXIT_OK
            and main(["report", "--records", str(records), "--out", str(report)]) == EXIT_OK
        )
        if not ok:
            problems.append(f"pipeline run {label} failed")
            break
        outputs[label] = {
            "manifest.csv": (corrupted / "manifest.csv").read_bytes(),
            "records.jsonl": records.read_bytes(),
            "report.csv": report.read_bytes(),
            "sample.png": (corrupted / "fog" / "s3" / "frame_007.png").read_bytes(),
        }
    if not problems:
        for name in outputs["a"]:
            if outputs["a"][name] != outputs["b"][name]:
                problems.append(f"{name} differs between identically configured runs")
    _verdict(capsys, "pipeline-determinism", problems, time.monotonic() - t0)

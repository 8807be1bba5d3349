import hashlib
import math

import numpy as np
import pytest

import oracles
from segrobust import (
    CORRUPTION_KINDS,
    CorruptionSpec,
    Image,
    InvalidSeverityError,
    SeverityTable,
    UnknownKindError,
    apply_corruption,
    constant_image,
    corrupt_corpus,
    distortion_psnr,
    frame_seed,
    natural_test_image,
    save_image,
)
from segrobust.corruptions import MANIFEST_HEADER

EXPECTED_KINDS = {
    "gaussian_noise",
    "shot_noise",
    "impulse_noise",
    "speckle_noise",
    "defocus_blur",
    "gaussian_blur",
    "glass_blur",
    "motion_blur",
    "zoom_blur",
    "fog",
    "snow",
    "spatter",
    "brightness",
    "contrast",
    "saturate",
    "pixelate",
    "jpeg_compression",
    "elastic_transform",
}


def image_digest(img: Image) -> str:
    return hashlib.sha256(img.data.tobytes()).hexdigest()


class TestSpecValidation:
    def test_kind_roster(self):
        assert len(CORRUPTION_KINDS) == 18
        assert set(CORRUPTION_KINDS) == EXPECTED_KINDS

    def test_unknown_kind(self):
        with pytest.raises(UnknownKindError):
            CorruptionSpec(kind="frost", severity=1, seed=0)

    def test_severity_range(self):
        with pytest.raises(InvalidSeverityError):
            CorruptionSpec(kind="fog", severity=6, seed=0)
        with pytest.raises(InvalidSeverityError):
            CorruptionSpec(kind="fog", severity=-1, seed=0)

    def test_seed_range(self):
        with pytest.raises(ValueError):
            CorruptionSpec(kind="fog", severity=1, seed=-1)
        with pytest.raises(ValueError):
            CorruptionSpec(kind="fog", severity=1, seed=2**64)
        CorruptionSpec(kind="fog", severity=1, seed=2**64 - 1)


class TestApplyCorruption:
    def test_severity_zero_is_identity_for_every_kind(self):
        img = natural_test_image(48, seed=2)
        for kind in CORRUPTION_KINDS:
            out = apply_corruption(img, CorruptionSpec(kind=kind, severity=0, seed=9))
            assert np.array_equal(out.data, img.data), kind

    def test_bitwise_deterministic(self):
        img = natural_test_image(48, seed=4)
        for kind in CORRUPTION_KINDS:
            spec = CorruptionSpec(kind=kind, severity=3, seed=21)
            first = image_digest(apply_corruption(img, spec))
            second = image_digest(apply_corruption(img, spec))
            assert first == second, kind

    def test_seed_changes_stochastic_output(self):
        img = natural_test_image(48, seed=4)
        a = apply_corruption(img, CorruptionSpec(kind="gaussian_noise", severity=3, seed=1))
        b = apply_corruption(img, CorruptionSpec(kind="gaussian_noise", severity=3, seed=2))
        assert not np.array_equal(a.data, b.data)

    def test_shape_preserved_on_non_square_frames(self):
        img = natural_test_image(64, seed=6)
        cropped = Image(np.ascontiguousarray(img.data[:40, :56]))
        for kind in CORRUPTION_KINDS:
            out = apply_corruption(cropped, CorruptionSpec(kind=kind, severity=2, seed=3))
            assert out.shape == cropped.shape, kind

    def test_brightness_per_pixel_oracle(self):
        img = natural_test_image(32, seed=8)
        table = SeverityTable.default()
        for severity in range(1, 6):
            delta = table.value("brightness", "delta", severity)
            out = apply_corruption(img, CorruptionSpec(kind="brightness", severity=severity, seed=0))
            for row_in, row_out in zip(img.data.tolist(), out.data.tolist()):
                for px_in, px_out in zip(row_in, row_out):
                    for v_in, v_out in zip(px_in, px_out):
                        shifted = min(max(v_in / 255.0 + delta, 0.0), 1.0) * 255.0
                        assert v_out == round(shifted)

    def test_gaussian_noise_std_calibration_on_mid_gray(self):
        img = constant_image(128, 128)  # 16384 samples per channel
        table = SeverityTable.default()
        for severity in range(1, 6):
            sigma = table.value("gaussian_noise", "sigma", severity)
            out = apply_corruption(img, CorruptionSpec(kind="gaussian_noise", severity=severity, seed=7))
            for ch in range(3):
                std = out.data[:, :, ch].astype(np.float64).std(ddof=1) / 255.0
                assert abs(std - sigma) / sigma < 0.05

    def test_impulse_hits_nest_across_severities(self):
        img = natural_test_image(64, seed=1)
        low = apply_corruption(img, CorruptionSpec(kind="impulse_noise", severity=1, seed=3))
        high = apply_corruption(img, CorruptionSpec(kind="impulse_noise", severity=5, seed=3))
        hit_low = (low.data != img.data).any(axis=2)
        hit_high = (high.data != img.data).any(axis=2)
        assert hit_low.sum() > 0
        assert not (hit_low & ~hit_high).any()

    def test_multiplicative_noise_fixes_black(self):
        img = constant_image(32, 0)
        for kind in ("speckle_noise", "shot_noise"):
            out = apply_corruption(img, CorruptionSpec(kind=kind, severity=5, seed=5))
            assert np.array_equal(out.data, img.data), kind


class TestDistortionPsnr:
    def test_identical_images(self):
        img = natural_test_image(32, seed=0)
        assert distortion_psnr(img, img) == math.inf

    def test_plus_one_everywhere(self):
        a = constant_image(32, 100)
        b = constant_image(32, 101)
        assert distortion_psnr(a, b) == pytest.approx(10 * math.log10(255**2), abs=1e-9)

    def test_matches_oracle(self, rng):
        a = Image(rng.integers(0, 256, size=(8, 8, 3), dtype=np.uint8))
        b = Image(rng.integers(0, 256, size=(8, 8, 3), dtype=np.uint8))
        expected = oracles.psnr(a.data.tolist(), b.data.tolist())
        assert distortion_psnr(a, b) == pytest.approx(expected, abs=1e-9)

    def test_gaussian_severity_5_below_severity_1(self):
        img = natural_test_image(64, seed=9)
        p1 = distortion_psnr(img, apply_corruption(img, CorruptionSpec(kind="gaussian_noise", severity=1, seed=2)))
        p5 = distortion_psnr(img, apply_corruption(img, CorruptionSpec(kind="gaussian_noise", severity=5, seed=2)))
        assert p5 < p1


class TestSeverityTable:
    def test_published_defaults_pinned(self):
        table = SeverityTable.default()
        assert [table.value("jpeg_compression", "quality", s) for s in range(1, 6)] == [25, 18, 15, 10, 7]
        assert [table.value("zoom_blur", "max_zoom", s) for s in range(1, 6)] == [1.11, 1.16, 1.21, 1.26, 1.31]
        assert [table.value("brightness", "delta", s) for s in range(1, 6)] == [0.1, 0.2, 0.3, 0.4, 0.5]

    def test_every_kind_has_five_entries(self):
        table = SeverityTable.default()
        for kind in CORRUPTION_KINDS:
            params = table.at(kind, 1)
            assert params
            for name in params:
                assert len(table.params[kind][name]) == 5

    def test_severity_bounds(self):
        table = SeverityTable.default()
        with pytest.raises(ValueError):
            table.value("fog", "intensity", 0)
        with pytest.raises(ValueError):
            table.value("fog", "intensity", 6)

    def test_rejects_non_monotone_vector(self):
        params = {k: dict(v) for k, v in SeverityTable.default().params.items()}
        params["gaussian_noise"] = {"sigma": (0.1, 0.3, 0.2, 0.4, 0.5)}
        with pytest.raises(ValueError):
            SeverityTable(params=params)

    def test_toml_override(self, tmp_path):
        cfg = tmp_path / "severity.toml"
        cfg.write_text("[gaussian_noise]\nsigma = [0.01, 0.02, 0.03, 0.04, 0.05]\n")
        table = SeverityTable.from_file(cfg)
        assert table.value("gaussian_noise", "sigma", 5) == 0.05
        # untouched kinds keep their defaults
        assert table.value("jpeg_compression", "quality", 1) == 25

    def test_toml_rejects_unknown_names(self, tmp_path):
        cfg = tmp_path / "severity.toml"
        cfg.write_text("[fresnel_blur]\nsigma = [1, 2, 3, 4, 5]\n")
        with pytest.raises(ValueError):
            SeverityTable.from_file(cfg)
        cfg.write_text("[fog]\nwobble = [1, 2, 3, 4, 5]\n")
        with pytest.raises(ValueError):
            SeverityTable.from_file(cfg)


class TestCorruptCorpus:
    @pytest.fixture
    def frames_dir(self, tmp_path):
        d = tmp_path / "frames"
        for i in range(2):
            save_image(natural_test_image(40, seed=i), d / f"f{i}.png")
        return d

    def test_counting(self, frames_dir, tmp_path):
        out = tmp_path / "out"
        rows = corrupt_corpus(frames_dir, out, kinds=["fog", "contrast"], severities=[1, 3], seed=1)
        assert len(rows) == 8
        pngs = sorted(p.relative_to(out).as_posix() for p in out.rglob("*.png"))
        assert len(pngs) == 8
        assert "fog/s1/f0.png" in pngs
        manifest = (out / "manifest.csv").read_text().splitlines()
        assert manifest[0] == ",".join(MANIFEST_HEADER)
        assert len(manifest) == 9

    def test_empty_kinds(self, frames_dir, tmp_path):
        out = tmp_path / "out"
        rows = corrupt_corpus(frames_dir, out, kinds=[], severities=[1], seed=1)
        assert rows == []
        assert list(out.rglob("*.png")) == []
        assert (out / "manifest.csv").read_text().splitlines() == [",".join(MANIFEST_HEADER)]

    def test_rerun_is_byte_identical(self, frames_dir, tmp_path):
        kwargs = dict(kinds=["gaussian_noise", "pixelate"], severities=[2], seed=77)
        rows_a = corrupt_corpus(frames_dir, tmp_path / "a", **kwargs)
        rows_b = corrupt_corpus(frames_dir, tmp_path / "b", **kwargs)
        assert [r.sha256 for r in rows_a] == [r.sha256 for r in rows_b]
        assert (tmp_path / "a" / "manifest.csv").read_bytes() == (tmp_path / "b" / "manifest.csv").read_bytes()
        for row in rows_a:
            digest = hashlib.sha256((tmp_path / "a" / row.path).read_bytes()).hexdigest()
            assert digest == row.sha256

    def test_worker_count_does_not_change_output(self, frames_dir, tmp_path):
        kwargs = dict(kinds=["snow", "spatter"], severities=[1, 4], seed=5)
        serial = corrupt_corpus(frames_dir, tmp_path / "serial", workers=1, **kwargs)
        threaded = corrupt_corpus(frames_dir, tmp_path / "threaded", workers=4, **kwargs)
        assert serial == threaded

    def test_manifest_rows_sorted(self, frames_dir, tmp_path):
        rows = corrupt_corpus(frames_dir, tmp_path / "out", kinds=["snow", "fog"], severities=[3, 1], seed=0)
        keys = [(r.frame, r.kind, r.severity) for r in rows]
        assert keys == sorted(keys)

    def test_frame_seed_is_stable(self):
        assert frame_seed(1, "frame_000") == frame_seed(1, "frame_000")
        assert frame_seed(1, "frame_000") != frame_seed(2, "frame_000")
        assert frame_seed(1, "frame_000") != frame_seed(1, "frame_001")

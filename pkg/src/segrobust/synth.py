"""Synthetic rasters for tests, demos, and calibration runs.

Nothing here ships data: frames are generated on demand from seeds, so
end-to-end runs need no bundled photographs. The tool corpus draws a
bright constant-color capsule (the "instrument") over a dark textured
background, which a color clusterer separates cleanly; the ground truth
is the exact capsule raster.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np
from scipy.ndimage import map_coordinates

from .imgcore import BinaryMask, Image
from .pngio import save_image, save_mask_raster

__all__ = ["constant_image", "natural_test_image", "make_tool_corpus", "TOOL_COLOR"]

# Bright, slightly warm gray, far from anything the background noise
# reaches; constant within and across frames.
TOOL_COLOR = (209, 209, 199)


def _rng(*context) -> np.random.Generator:
    material = "segrobust.synth|" + "|".join(str(c) for c in context)
    digest = hashlib.blake2b(material.encode("utf-8"), digest_size=16).digest()
    return np.random.Generator(np.random.Philox(key=np.frombuffer(digest, dtype=np.uint64)))


def constant_image(size: int = 128, value: tuple[int, int, int] | int = 128) -> Image:
    if isinstance(value, int):
        value = (value, value, value)
    data = np.empty((size, size, 3), dtype=np.uint8)
    data[:] = value
    return Image(data)


def _octave_noise(rng: np.random.Generator, size: int, coarsest: int = 4) -> np.ndarray:
    """Broadband value noise in roughly [-1, 1], shape (size, size, 3)."""
    out = np.zeros((size, size, 3))
    grid_size = coarsest
    amplitude = 1.0
    total = 0.0
    coords_cache = np.arange(size, dtype=np.float64)
    while grid_size <= size:
        grid = rng.uniform(-1.0, 1.0, size=(grid_size, grid_size, 3))
        coords = coords_cache * (grid_size - 1) / max(size - 1, 1)
        yy, xx = np.meshgrid(coords, coords, indexing="ij")
        for ch in range(3):
            out[..., ch] += amplitude * map_coordinates(
                grid[..., ch], [yy, xx], order=1, mode="nearest"
            )
        total += amplitude
        amplitude *= 0.55
        grid_size *= 2
    return out / total


def natural_test_image(size: int = 256, seed: int = 0) -> Image:
    """Textured multi-scale color image for distortion calibration.

    Broadband octave noise in three independent channels plus a bright
    disk and a dark bar for hard edges. Values are squeezed into
    [0.06, 0.94] so no region starts saturated; every corruption has
    room to move every pixel.
    """
    rng = _rng("natural", size, seed)
    x = _octave_noise(rng, size)

    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    cy, cx = 0.38 * size, 0.62 * size
    disk = (yy - cy) ** 2 + (xx - cx) ** 2 <= (0.18 * size) ** 2
    x[disk] += 0.5
    d = np.abs(0.6 * (yy - 0.7 * size) - 0.8 * (xx - 0.3 * size))
    x[d < 0.04 * size] -= 0.45

    lo, hi = x.min(), x.max()
    x = 0.06 + 0.88 * (x - lo) / (hi - lo)
    return Image(np.rint(x * 255.0).astype(np.uint8))


def _capsule_mask(size: int, a: np.ndarray, b: np.ndarray, thickness: float) -> np.ndarray:
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    p = np.stack([yy, xx], axis=-1)
    ab = b - a
    denom = float(ab @ ab)
    t = np.clip(((p - a) @ ab) / denom, 0.0, 1.0) if denom > 0 else np.zeros((size, size))
    nearest = a + t[..., None] * ab
    dist = np.hypot(p[..., 0] - nearest[..., 0], p[..., 1] - nearest[..., 1])
    return dist <= thickness


def make_tool_corpus(
    root: str | Path,
    n_frames: int = 20,
    size: int = 128,
    seed: int = 0,
) -> list[str]:
    """Write a ready-to-evaluate corpus under ``root``; returns frame ids.

    Each frame holds one capsule-shaped tool in the exact TOOL_COLOR over
    dark octave-noise texture (channel values capped well below the tool
    color), with ground truth equal to the capsule raster.
    """
    root = Path(root)
    stems = []
    for i in range(n_frames):
        rng = _rng("tool", seed, size, i)
        bg = _octave_noise(rng, size)
        lo, hi = bg.min(), bg.max()
        bg = (bg - lo) / (hi - lo)
        data = np.rint(8.0 + bg * 130.0).astype(np.uint8)

        margin = 0.18 * size
        for _ in range(64):
            a = rng.uniform(margin, size - margin, size=2)
            b = rng.uniform(margin, size - margin, size=2)
            if np.hypot(*(a - b)) >= 0.45 * size:
                break
        thickness = rng.uniform(0.05, 0.09) * size
        tool = _capsule_mask(size, a, b, thickness)
        data[tool] = TOOL_COLOR

        stem = f"frame_{i:03d}"
        save_image(Image(data), root / "images" / f"{stem}.png")
        save_mask_raster(BinaryMask(tool), root / "gt" / f"{stem}.png")
        stems.append(stem)
    return stems

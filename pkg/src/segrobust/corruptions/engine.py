"""Applying corruptions to images, deterministically.

`apply_corruption` is a pure function of the image bytes and the
`CorruptionSpec`:
all randomness comes from counter-based Philox generators keyed by
hashing (seed, kind, severity, stream label), so identical inputs give
bit-identical outputs, in any call order, from any number of threads.

Pixels stay in normalized [0, 1] float64 throughout and are clamped
before a single round-half-to-even conversion back to 8-bit at the end,
which keeps per-pixel oracles exact.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatchError, InvalidSeverityError, UnknownKindError
from ..imgcore import Image
from .kinds import KIND_FUNCS
from .severity import SeverityTable

__all__ = [
    "CORRUPTION_KINDS",
    "GEOMETRIC_KINDS",
    "MAX_SEED",
    "CorruptionSpec",
    "apply_corruption",
    "distortion_psnr",
]

CORRUPTION_KINDS: tuple[str, ...] = (
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
)

# Kinds that relocate pixels rather than reweighting them. Adjacent
# severity levels of these are allowed to tie in distortion.
GEOMETRIC_KINDS = frozenset({"glass_blur", "motion_blur", "zoom_blur", "pixelate", "elastic_transform"})

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class CorruptionSpec:
    """What to apply: a kind, a severity 0..5, and a 64-bit seed."""

    kind: str
    severity: int
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KIND_FUNCS:
            raise UnknownKindError(f"unknown corruption kind {self.kind!r}")
        if not isinstance(self.severity, int) or not 0 <= self.severity <= 5:
            raise InvalidSeverityError(f"severity must be an integer in 0..5, got {self.severity!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed <= MAX_SEED:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")


class _Streams:
    """Named, keyed random generators for one (seed, kind, severity).

    Each label yields an independent Philox stream whose key is a hash
    of the full context. Labels requested with severity_keyed=False omit
    the severity from the key; kinds use those for structural randomness
    that must stay put while only magnitudes change across levels.
    """

    def __init__(self, spec: CorruptionSpec):
        self._spec = spec

    def __call__(self, label: str, *, severity_keyed: bool = True) -> np.random.Generator:
        severity = self._spec.severity if severity_keyed else 0
        material = f"segrobust.corrupt|{self._spec.seed}|{self._spec.kind}|{severity}|{label}"
        digest = hashlib.blake2b(material.encode("utf-8"), digest_size=16).digest()
        key = np.frombuffer(digest, dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


def apply_corruption(img: Image, spec: CorruptionSpec, table: SeverityTable | None = None) -> Image:
    """Corrupted copy of ``img`` per ``spec``; severity 0 is the identity."""
    if spec.severity == 0:
        return img
    if table is None:
        table = SeverityTable.default()
    arr = img.data.astype(np.float64) / 255.0
    out = KIND_FUNCS[spec.kind](arr, table.at(spec.kind, spec.severity), _Streams(spec))
    data = np.rint(np.clip(out, 0.0, 1.0) * 255.0).astype(np.uint8)
    return Image(data)


def distortion_psnr(clean: Image, corrupted: Image) -> float:
    """Peak signal-to-noise ratio in dB against peak 255; +inf when identical."""
    if clean.shape != corrupted.shape:
        raise DimensionMismatchError(
            f"image shapes differ: {clean.shape} vs {corrupted.shape}"
        )
    diff = clean.data.astype(np.float64) - corrupted.data.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / mse)

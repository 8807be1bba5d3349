"""Core raster types and the run-length mask codec.

An :class:`Image` is an 8-bit RGB raster; a :class:`BinaryMask` is a
one-bit-per-pixel raster of the same geometry. Masks cross process
boundaries as :class:`RleMask`: a row-major run-length encoding whose
first run counts zeros (and only that run may be empty), with runs
alternating 0/1. Row-major scan order matches raster memory order and
is the layout contract of the mask interchange documents.

All three types are immutable after construction and every operation
here is a pure function, so they are safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MalformedRunsError, SumMismatchError

__all__ = ["Image", "BinaryMask", "RleMask", "rle_encode", "rle_decode", "mask_area"]


def _owned_readonly(arr: np.ndarray, source) -> np.ndarray:
    # Never freeze a caller-owned buffer; copy instead.
    if arr is source and arr.flags.writeable:
        arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Image:
    """An RGB image: shape (height, width, 3), dtype uint8, immutable."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.uint8)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"expected (H, W, 3) RGB samples, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        object.__setattr__(self, "data", _owned_readonly(arr, self.data))

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return 3

    @property
    def shape(self) -> tuple[int, int]:
        """(height, width) of the raster."""
        return self.data.shape[:2]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))


@dataclass(frozen=True, eq=False)
class BinaryMask:
    """A binary raster: shape (height, width), dtype bool, immutable.

    The mask's area is always recomputed from the bits; no stored area
    is ever trusted.
    """

    bits: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.bits, dtype=bool)
        if arr.ndim != 2:
            raise ValueError(f"expected (H, W) mask bits, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("mask must be at least 1x1")
        object.__setattr__(self, "bits", _owned_readonly(arr, self.bits))

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.bits.shape

    @property
    def area(self) -> int:
        """Number of set pixels, recomputed on every access."""
        return int(np.count_nonzero(self.bits))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMask):
            return NotImplemented
        return self.bits.shape == other.bits.shape and bool(np.array_equal(self.bits, other.bits))

    @classmethod
    def zeros(cls, height: int, width: int) -> "BinaryMask":
        return cls(np.zeros((height, width), dtype=bool))

    @classmethod
    def ones(cls, height: int, width: int) -> "BinaryMask":
        return cls(np.ones((height, width), dtype=bool))


@dataclass(frozen=True)
class RleMask:
    """Run-length encoded binary mask.

    ``counts`` lists run lengths along the row-major scan. Runs alternate
    between zeros and ones, starting with zeros, so a mask whose first
    pixel is set encodes with a leading count of 0. In canonical form no
    run except the first has length zero; :func:`rle_encode` always emits
    canonical counts, and :func:`rle_decode` rejects non-canonical input.
    """

    width: int
    height: int
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if self.width < 1 or self.height < 1:
            raise ValueError("RLE dimensions must be at least 1x1")


def rle_encode(mask: BinaryMask) -> RleMask:
    """Encode a mask into canonical row-major run lengths.

    The encoding is bit-exact and unique: equal masks always produce
    identical counts, and `rle_decode(rle_encode(m)) == m`.
    """
    flat = mask.bits.ravel()
    n = flat.size
    breaks = np.flatnonzero(flat[1:] != flat[:-1]) + 1
    edges = np.concatenate(([0], breaks, [n]))
    counts = np.diff(edges).tolist()
    if flat[0]:
        counts.insert(0, 0)
    return RleMask(width=mask.width, height=mask.height, counts=tuple(counts))


def rle_decode(rle: RleMask) -> BinaryMask:
    """Decode run lengths back into a mask.

    Raises:
        SumMismatchError: counts do not sum to width * height.
        MalformedRunsError: a negative run, or a zero-length run in any
            position other than the first.
    """
    counts = np.asarray(rle.counts, dtype=np.int64)
    if counts.size and counts.min() < 0:
        raise MalformedRunsError(f"negative run length in {rle.counts!r}")
    total = int(counts.sum())
    expected = rle.width * rle.height
    if total != expected:
        raise SumMismatchError(f"run lengths sum to {total}, expected {expected} for {rle.width}x{rle.height}")
    if counts.size > 1 and counts[1:].min() == 0:
        raise MalformedRunsError(f"interior zero-length run in {rle.counts!r}")
    values = np.zeros(counts.size, dtype=bool)
    values[1::2] = True
    flat = np.repeat(values, counts)
    return BinaryMask(flat.reshape(rle.height, rle.width))


def mask_area(mask: BinaryMask) -> int:
    """Count of set pixels in the mask."""
    return mask.area

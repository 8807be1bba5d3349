"""Reading and writing rasters via Pillow."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image as PilImage, UnidentifiedImageError

from .errors import UnreadableFileError
from .imgcore import BinaryMask, Image

__all__ = ["load_image", "save_image", "load_mask_raster", "save_mask_raster"]

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg")


def load_image(path: str | Path) -> Image:
    """RGB image from disk; grayscale and alpha inputs are converted."""
    try:
        with PilImage.open(path) as im:
            data = np.asarray(im.convert("RGB"), dtype=np.uint8)
    except (OSError, UnidentifiedImageError, ValueError) as exc:
        raise UnreadableFileError(f"cannot read image {path}: {exc}") from exc
    return Image(data)


def save_image(img: Image, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    PilImage.fromarray(img.data, mode="RGB").save(path, format="PNG")


def load_mask_raster(path: str | Path) -> BinaryMask:
    """Binary mask from an image file: any nonzero channel marks foreground."""
    try:
        with PilImage.open(path) as im:
            if im.mode in ("RGBA", "LA", "PA", "P"):
                im = im.convert("RGB")
            data = np.asarray(im)
    except (OSError, UnidentifiedImageError, ValueError) as exc:
        raise UnreadableFileError(f"cannot read mask {path}: {exc}") from exc
    if data.ndim == 3:
        bits = (data != 0).any(axis=2)
    else:
        bits = data != 0
    return BinaryMask(bits)


def save_mask_raster(mask: BinaryMask, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = np.where(mask.bits, 255, 0).astype(np.uint8)
    PilImage.fromarray(data, mode="L").save(path, format="PNG")

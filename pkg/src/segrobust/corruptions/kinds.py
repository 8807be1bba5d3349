"""The 18 corruption kinds.

Every kind is a function ``fn(arr, params, streams)`` where ``arr`` is a
float64 RGB array in [0, 1], ``params`` maps parameter names to floats
for the requested severity, and ``streams`` hands out named random
generators. Functions return a float64 array of the same shape; the
engine performs the single clamp-and-round step at the end, so kinds do
not need to clip unless an intermediate formula requires it.

Structural randomness (which pixels are hit, displacement fields, streak
angles) is drawn from severity-independent streams so the corrupted sets
nest as severity grows; only magnitudes change with severity. That is
what makes distortion strictly monotone across levels instead of merely
monotone on average.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.fft
from scipy.ndimage import convolve, gaussian_filter, map_coordinates

__all__ = ["KIND_FUNCS"]

KIND_FUNCS: dict = {}


def _kind(name):
    def register(fn):
        KIND_FUNCS[name] = fn
        return fn

    return register


# --------------------------------------------------------------------------
# shared helpers


def _conv_rgb(arr, kernel):
    """2-D kernel applied to each channel with mirrored borders."""
    return convolve(arr, kernel[:, :, None], mode="mirror")


def _disk_kernel(radius, alias_blur=0.5):
    r = int(round(radius))
    ax = np.arange(-r, r + 1, dtype=np.float64)
    xx, yy = np.meshgrid(ax, ax)
    kernel = (xx * xx + yy * yy <= radius * radius).astype(np.float64)
    kernel = gaussian_filter(kernel, alias_blur)
    return kernel / kernel.sum()


def _motion_kernel(length, angle):
    """Normalized line segment of the given pixel length, bilinearly splatted."""
    size = int(length) | 1
    k = np.zeros((size, size), dtype=np.float64)
    c = (size - 1) / 2.0
    half = (length - 1) / 2.0
    ts = np.linspace(-half, half, 8 * size + 1)
    xs = c + ts * math.cos(angle)
    ys = c + ts * math.sin(angle)
    x0 = np.floor(xs).astype(int)
    y0 = np.floor(ys).astype(int)
    fx = xs - x0
    fy = ys - y0
    for dx, dy, w in (
        (0, 0, (1 - fx) * (1 - fy)),
        (1, 0, fx * (1 - fy)),
        (0, 1, (1 - fx) * fy),
        (1, 1, fx * fy),
    ):
        np.add.at(k, (np.clip(y0 + dy, 0, size - 1), np.clip(x0 + dx, 0, size - 1)), w)
    return k / k.sum()


def _plasma_fractal(size, rng, decay):
    """Multi-octave value noise on a power-of-two grid, min-max normalized.

    Diamond-square with wraparound; the jitter amplitude shrinks by
    ``decay`` per octave, so larger decay gives smoother billows. The
    underlying uniform draws do not depend on ``decay`` (only their
    scale does), which keeps fields at different severities aligned.
    """
    n = 1
    while n < size:
        n *= 2
    field = np.zeros((n, n), dtype=np.float64)
    step = n
    scale = 1.0
    while step >= 2:
        half = step // 2
        corners = field[0:n:step, 0:n:step]
        csum = (
            corners
            + np.roll(corners, -1, axis=0)
            + np.roll(corners, -1, axis=1)
            + np.roll(corners, (-1, -1), axis=(0, 1))
        )
        field[half::step, half::step] = csum / 4.0 + rng.uniform(-scale, scale, csum.shape)
        centers = field[half::step, half::step]
        corners = field[0:n:step, 0:n:step]
        horiz = corners + np.roll(corners, -1, axis=1) + centers + np.roll(centers, 1, axis=0)
        field[0::step, half::step] = horiz / 4.0 + rng.uniform(-scale, scale, horiz.shape)
        vert = corners + np.roll(corners, -1, axis=0) + centers + np.roll(centers, 1, axis=1)
        field[half::step, 0::step] = vert / 4.0 + rng.uniform(-scale, scale, vert.shape)
        step = half
        scale /= decay
    field -= field.min()
    peak = field.max()
    return field / peak if peak > 0 else field


def _zoom_center(arr, factor):
    h, w = arr.shape[:2]
    cy, cx = (h - 1) / 2.0, (w - 1) / 2.0
    ys = cy + (np.arange(h, dtype=np.float64) - cy) / factor
    xs = cx + (np.arange(w, dtype=np.float64) - cx) / factor
    yy, xx = np.meshgrid(ys, xs, indexing="ij")
    out = np.empty_like(arr)
    for ch in range(arr.shape[2]):
        out[..., ch] = map_coordinates(arr[..., ch], [yy, xx], order=1, mode="nearest")
    return out


def _luminance(arr):
    return 0.299 * arr[..., 0] + 0.587 * arr[..., 1] + 0.114 * arr[..., 2]


def _rgb_to_hsv(rgb):
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    maxc = rgb.max(axis=-1)
    minc = rgb.min(axis=-1)
    delta = maxc - minc
    safe_max = np.where(maxc > 0, maxc, 1.0)
    s = np.where(maxc > 0, delta / safe_max, 0.0)
    safe_delta = np.where(delta > 0, delta, 1.0)
    rc = (maxc - r) / safe_delta
    gc = (maxc - g) / safe_delta
    bc = (maxc - b) / safe_delta
    h = np.select([maxc == r, maxc == g], [bc - gc, 2.0 + rc - bc], default=4.0 + gc - rc)
    h = np.where(delta > 0, (h / 6.0) % 1.0, 0.0)
    return np.stack([h, s, maxc], axis=-1)


def _hsv_to_rgb(hsv):
    h, s, v = hsv[..., 0], hsv[..., 1], hsv[..., 2]
    i = np.floor(h * 6.0)
    f = h * 6.0 - i
    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))
    sector = i.astype(int) % 6
    r = np.choose(sector, [v, q, p, p, t, v])
    g = np.choose(sector, [t, v, v, q, p, p])
    b = np.choose(sector, [p, p, t, v, v, q])
    return np.stack([r, g, b], axis=-1)


# --------------------------------------------------------------------------
# noise family


@_kind("gaussian_noise")
def _gaussian_noise(arr, params, streams):
    unit = streams("field", severity_keyed=False).normal(0.0, 1.0, arr.shape)
    return arr + params["sigma"] * unit


@_kind("shot_noise")
def _shot_noise(arr, params, streams):
    photons = params["photons"]
    return streams("noise").poisson(arr * photons) / photons


@_kind("impulse_noise")
def _impulse_noise(arr, params, streams):
    amount = params["amount"]
    u = streams("field", severity_keyed=False).uniform(size=arr.shape[:2])
    out = arr.copy()
    out[u < amount / 2.0] = 0.0
    out[u > 1.0 - amount / 2.0] = 1.0
    return out


@_kind("speckle_noise")
def _speckle_noise(arr, params, streams):
    unit = streams("field", severity_keyed=False).normal(0.0, 1.0, arr.shape)
    return arr + arr * (params["sigma"] * unit)


# --------------------------------------------------------------------------
# blur family


@_kind("defocus_blur")
def _defocus_blur(arr, params, streams):
    return _conv_rgb(arr, _disk_kernel(params["radius"]))


@_kind("gaussian_blur")
def _gaussian_blur(arr, params, streams):
    sigma = params["sigma"]
    return gaussian_filter(arr, sigma=(sigma, sigma, 0.0), mode="nearest")


@_kind("glass_blur")
def _glass_blur(arr, params, streams):
    """Blur, then locally displace pixels, then blur again.

    Displacement offsets come from one severity-independent field per
    pass, scaled by max_delta and rounded, so a higher severity moves
    the same pixels farther rather than moving different pixels.
    """
    sigma = params["sigma"]
    max_delta = params["max_delta"]
    iterations = int(params["iterations"])
    h, w = arr.shape[:2]
    rows = np.arange(h)[:, None]
    cols = np.arange(w)[None, :]
    out = gaussian_filter(arr, sigma=(sigma, sigma, 0.0), mode="nearest")
    for k in range(iterations):
        field = streams(f"offsets{k}", severity_keyed=False).uniform(-1.0, 1.0, size=(h, w, 2))
        dy = np.rint(field[..., 0] * max_delta).astype(int)
        dx = np.rint(field[..., 1] * max_delta).astype(int)
        out = out[np.clip(rows + dy, 0, h - 1), np.clip(cols + dx, 0, w - 1)]
    return gaussian_filter(out, sigma=(sigma, sigma, 0.0), mode="nearest")


@_kind("motion_blur")
def _motion_blur(arr, params, streams):
    angle = streams("angle", severity_keyed=False).uniform(0.0, math.pi)
    return _conv_rgb(arr, _motion_kernel(params["length"], angle))


@_kind("zoom_blur")
def _zoom_blur(arr, params, streams):
    n = int(round((params["max_zoom"] - 1.0) / 0.01))
    factors = 1.0 + 0.01 * np.arange(n)
    acc = np.zeros_like(arr)
    for f in factors:
        acc += arr if f == 1.0 else _zoom_center(arr, f)
    return acc / len(factors)


# --------------------------------------------------------------------------
# weather family


@_kind("fog")
def _fog(arr, params, streams):
    h, w = arr.shape[:2]
    intensity = params["intensity"]
    rng = streams("plasma", severity_keyed=False)
    plasma = _plasma_fractal(max(h, w), rng, params["decay"])[:h, :w]
    peak = arr.max()
    fogged = arr + intensity * plasma[:, :, None]
    return fogged * peak / (peak + intensity)


@_kind("snow")
def _snow(arr, params, streams):
    amount = params["amount"]
    whiten = params["whiten"]
    length = params["length"]
    h, w = arr.shape[:2]
    base = streams("flakes", severity_keyed=False).uniform(size=(h, w))
    flakes = np.clip((base - (1.0 - amount)) / amount, 0.0, 1.0)
    angle = math.pi / 2.0 + streams("angle", severity_keyed=False).uniform(-math.pi / 12.0, math.pi / 12.0)
    streaks = convolve(flakes, _motion_kernel(length, angle), mode="mirror")
    streaks = np.clip(streaks * length * 0.75, 0.0, 1.0)
    gray = _luminance(arr)
    whitened = np.maximum(arr, (gray * 1.5 + 0.5)[:, :, None])
    out = (1.0 - whiten) * arr + whiten * whitened
    return out + streaks[:, :, None]


@_kind("spatter")
def _spatter(arr, params, streams):
    """Mud-colored blobs covering the requested fraction of the frame."""
    coverage = params["coverage"]
    h, w = arr.shape[:2]
    field = streams("field", severity_keyed=False).uniform(size=(h, w))
    field = gaussian_filter(field, sigma=max(1.0, 0.02 * min(h, w)), mode="wrap")
    threshold = np.quantile(field, 1.0 - coverage)
    blob = gaussian_filter((field >= threshold).astype(np.float64), sigma=1.0, mode="nearest")
    blob = np.clip(blob, 0.0, 1.0)[:, :, None]
    mud = np.array([0.25, 0.165, 0.08])
    return arr * (1.0 - blob) + mud * blob


# --------------------------------------------------------------------------
# digital family


@_kind("brightness")
def _brightness(arr, params, streams):
    return arr + params["delta"]


@_kind("contrast")
def _contrast(arr, params, streams):
    means = arr.mean(axis=(0, 1), keepdims=True)
    return (arr - means) * params["factor"] + means


@_kind("saturate")
def _saturate(arr, params, streams):
    hsv = _rgb_to_hsv(np.clip(arr, 0.0, 1.0))
    hsv[..., 1] = np.clip(hsv[..., 1] * params["factor"], 0.0, 1.0)
    return _hsv_to_rgb(hsv)


@_kind("pixelate")
def _pixelate(arr, params, streams):
    scale = params["scale"]
    h, w = arr.shape[:2]
    th = max(1, int(round(h * scale)))
    tw = max(1, int(round(w * scale)))
    assign_y = (np.arange(h) * th) // h
    assign_x = (np.arange(w) * tw) // w
    row_edges = np.searchsorted(assign_y, np.arange(th))
    col_edges = np.searchsorted(assign_x, np.arange(tw))
    sums = np.add.reduceat(np.add.reduceat(arr, row_edges, axis=0), col_edges, axis=1)
    counts = np.diff(np.append(row_edges, h))[:, None] * np.diff(np.append(col_edges, w))[None, :]
    small = sums / counts[:, :, None]
    return small[assign_y][:, assign_x]


_JPEG_LUMA_BASE = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.int64,
)

_JPEG_CHROMA_BASE = np.array(
    [
        [17, 18, 24, 47, 99, 99, 99, 99],
        [18, 21, 26, 66, 99, 99, 99, 99],
        [24, 26, 56, 99, 99, 99, 99, 99],
        [47, 66, 99, 99, 99, 99, 99, 99],
        [99, 99, 99, 99, 99, 99, 99, 99],
        [99, 99, 99, 99, 99, 99, 99, 99],
        [99, 99, 99, 99, 99, 99, 99, 99],
        [99, 99, 99, 99, 99, 99, 99, 99],
    ],
    dtype=np.int64,
)


def _jpeg_quant_tables(quality):
    q = min(max(int(quality), 1), 100)
    s = 5000 // q if q < 50 else 200 - 2 * q
    luma = np.clip((_JPEG_LUMA_BASE * s + 50) // 100, 1, 255)
    chroma = np.clip((_JPEG_CHROMA_BASE * s + 50) // 100, 1, 255)
    return luma.astype(np.float64), chroma.astype(np.float64)


def _pad_edge(plane, mult):
    h, w = plane.shape
    return np.pad(plane, ((0, -h % mult), (0, -w % mult)), mode="edge")


def _dct_quant_roundtrip(plane, qtable):
    h, w = plane.shape
    blocks = plane.reshape(h // 8, 8, w // 8, 8).transpose(0, 2, 1, 3)
    coefs = scipy.fft.dctn(blocks, axes=(2, 3), norm="ortho")
    coefs = np.round(coefs / qtable) * qtable
    rec = scipy.fft.idctn(coefs, axes=(2, 3), norm="ortho")
    return rec.transpose(0, 2, 1, 3).reshape(h, w)


@_kind("jpeg_compression")
def _jpeg_compression(arr, params, streams):
    """Baseline JPEG encode/decode emulated in memory.

    BT.601 full-range YCbCr, 4:2:0 chroma via 2x2 block means, 8x8
    orthonormal DCT, quantization with the standard example tables
    scaled the way libjpeg scales them. No entropy coding: only the
    lossy stages matter for the raster.
    """
    h, w = arr.shape[:2]
    x = arr * 255.0
    r, g, b = x[..., 0], x[..., 1], x[..., 2]
    y = 0.299 * r + 0.587 * g + 0.114 * b
    cb = 128.0 - 0.168735892 * r - 0.331264108 * g + 0.5 * b
    cr = 128.0 + 0.5 * r - 0.418687589 * g - 0.081312411 * b
    luma_q, chroma_q = _jpeg_quant_tables(params["quality"])
    y_rec = _dct_quant_roundtrip(_pad_edge(y, 8) - 128.0, luma_q)[:h, :w] + 128.0
    chroma_rec = []
    for plane in (cb, cr):
        p = _pad_edge(plane, 2)
        sub = p.reshape(p.shape[0] // 2, 2, p.shape[1] // 2, 2).mean(axis=(1, 3))
        rec = _dct_quant_roundtrip(_pad_edge(sub, 8) - 128.0, chroma_q) + 128.0
        up = np.repeat(np.repeat(rec, 2, axis=0), 2, axis=1)
        chroma_rec.append(up[:h, :w])
    cb_rec, cr_rec = chroma_rec
    r2 = y_rec + 1.402 * (cr_rec - 128.0)
    g2 = y_rec - 0.344136 * (cb_rec - 128.0) - 0.714136 * (cr_rec - 128.0)
    b2 = y_rec + 1.772 * (cb_rec - 128.0)
    return np.stack([r2, g2, b2], axis=-1) / 255.0


@_kind("elastic_transform")
def _elastic_transform(arr, params, streams):
    h, w = arr.shape[:2]
    alpha = params["displacement"] * min(h, w)
    raw = streams("field", severity_keyed=False).uniform(-1.0, 1.0, size=(2, h, w))
    sigma = 0.1 * min(h, w)
    dy = gaussian_filter(raw[0], sigma, mode="reflect")
    dx = gaussian_filter(raw[1], sigma, mode="reflect")
    peak = np.hypot(dy, dx).max()
    if peak > 0:
        dy *= alpha / peak
        dx *= alpha / peak
    yy, xx = np.meshgrid(np.arange(h, dtype=np.float64), np.arange(w, dtype=np.float64), indexing="ij")
    coords = [yy + dy, xx + dx]
    out = np.empty_like(arr)
    for ch in range(arr.shape[2]):
        out[..., ch] = map_coordinates(arr[..., ch], coords, order=1, mode="mirror")
    return out

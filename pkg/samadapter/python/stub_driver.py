"""A deterministic stand-in for the model driver, for tests and dry runs.

Speaks the same one-JSON-object-per-frame protocol as sam_driver.py but
needs no model weights: it emits a quadrant partition of the frame plus
the bright region (any channel >= 160) split at its median column. The
output over-segments like the real generator does, only predictably.
"""

import argparse
import json
import platform
import sys


def column_major_counts(seg):
    import numpy as np

    flat = seg.ravel(order="F").astype(np.uint8)
    if flat.size == 0:
        return []
    boundaries = np.flatnonzero(np.diff(flat)) + 1
    edges = np.concatenate(([0], boundaries, [flat.size]))
    runs = np.diff(edges).tolist()
    counts = [0] if flat[0] else []
    counts.extend(runs)
    return [int(c) for c in counts]


def stub_masks(arr):
    import numpy as np

    height, width = arr.shape[:2]
    candidates = []
    half_h, half_w = height // 2, width // 2
    for rows, cols in (
        (slice(0, half_h), slice(0, half_w)),
        (slice(0, half_h), slice(half_w, width)),
        (slice(half_h, height), slice(0, half_w)),
        (slice(half_h, height), slice(half_w, width)),
    ):
        quadrant = np.zeros((height, width), dtype=bool)
        quadrant[rows, cols] = True
        candidates.append(quadrant)

    bright = (arr >= 160).any(axis=2)
    if bright.any():
        occupied = np.flatnonzero(bright.any(axis=0))
        mid = occupied[len(occupied) // 2]
        columns = np.arange(width)[None, :]
        candidates.append(bright & (columns <= mid))
        candidates.append(bright & (columns > mid))
    return [m for m in candidates if m.any()]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--checkpoint", required=True)
    parser.add_argument("--model-type", required=True)
    parser.add_argument("--device", required=True)
    parser.add_argument("--image", required=True)
    args = parser.parse_args()

    import numpy as np
    from PIL import Image

    arr = np.asarray(Image.open(args.image).convert("RGB"))
    height, width = arr.shape[:2]
    masks = [
        {
            "counts": column_major_counts(seg),
            "size": [height, width],
            "area": int(seg.sum()),
        }
        for seg in stub_masks(arr)
    ]
    json.dump(
        {
            "image": args.image,
            "width": width,
            "height": height,
            "versions": {
                "python": platform.python_version(),
                "torch": "none",
                "segment_anything": "stub-0.0",
            },
            "masks": masks,
        },
        sys.stdout,
    )
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()

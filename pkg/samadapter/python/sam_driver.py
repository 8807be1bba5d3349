"""Segment one frame with Segment Anything's automatic mask generator.

Invoked once per frame by the samadapter CLI. Prints a single JSON
object on stdout:

    {
      "image": str, "width": int, "height": int,
      "versions": {"python": ..., "torch": ..., "segment_anything": ...},
      "masks": [{"counts": [...], "size": [H, W], "area": int}, ...]
    }

`counts` is COCO-style uncompressed RLE in column-major order, the
generator's native convention; `masks` keeps the generator's output
order. The generator itself runs with default parameters.
"""

import argparse
import json
import platform
import sys


def column_major_counts(seg):
    """Alternating zero/one run lengths over the column-major scan."""
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


def library_versions():
    versions = {"python": platform.python_version()}
    try:
        import torch

        versions["torch"] = torch.__version__
    except Exception:
        versions["torch"] = "unknown"
    try:
        from importlib.metadata import version

        versions["segment_anything"] = version("segment-anything")
    except Exception:
        versions["segment_anything"] = "unknown"
    return versions


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--checkpoint", required=True)
    parser.add_argument("--model-type", required=True)
    parser.add_argument("--device", required=True)
    parser.add_argument("--image", required=True)
    args = parser.parse_args()

    import numpy as np
    from PIL import Image
    from segment_anything import SamAutomaticMaskGenerator, sam_model_registry

    arr = np.asarray(Image.open(args.image).convert("RGB"))
    height, width = arr.shape[:2]

    sam = sam_model_registry[args.model_type](checkpoint=args.checkpoint)
    sam.to(args.device)
    generator = SamAutomaticMaskGenerator(sam)
    records = generator.generate(arr)

    masks = []
    for record in records:
        seg = np.asarray(record["segmentation"], dtype=bool)
        masks.append(
            {
                "counts": column_major_counts(seg),
                "size": [height, width],
                "area": int(seg.sum()),
            }
        )
    json.dump(
        {
            "image": args.image,
            "width": width,
            "height": height,
            "versions": library_versions(),
            "masks": masks,
        },
        sys.stdout,
    )
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()

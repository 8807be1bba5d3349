"""
Consolidating sub-masks against a region of interest
====================================================

An over-segmenting segmenter shatters the object into several
sub-masks. The consolidation rule keeps every sub-mask whose
intersection ratio with the ground-truth region exceeds one half,
then scores two readings of the selection: the single best sub-mask
(largest area) and the union of all selected ones.

The union can only gain ground-truth pixels relative to the best
single sub-mask when the selected sub-masks are disjoint, which is
why the combined score never falls below the single score.
"""

import numpy as np

from segrobust import (
    BinaryMask,
    SubMaskSet,
    best_single_mask,
    combine_masks,
    intersection_ratio,
    iou,
    select_overlapping,
)

# Ground truth: the top two rows of a 4x5 frame, ten pixels.
gt = np.zeros((4, 5), dtype=bool)
gt[0:2] = True

# Sub-mask A: six pixels, all inside the ground truth.
a = np.zeros((4, 5), dtype=bool)
a[0] = True
a[1, 0] = True

# Sub-mask B: four pixels, three inside and one background pixel.
b = np.zeros((4, 5), dtype=bool)
b[1, 1:4] = True
b[2, 0] = True

gt_mask = BinaryMask(gt)
subset = SubMaskSet(frame_id="demo", masks=((0, BinaryMask(a)), (1, BinaryMask(b))))

for mask_id in subset.ids:
    ratio = intersection_ratio(subset.mask(mask_id), gt_mask)
    print(f"sub-mask {mask_id}: intersection ratio {ratio:.3f}")

# Both ratios clear 0.5, so both sub-masks are selected.
selection = select_overlapping(subset, gt_mask, threshold=0.5)
print("selected ids:", [i for i, _ in selection.selected])

single = best_single_mask(selection, subset)
combined = combine_masks(selection, subset)
print(f"single (best sub-mask) IoU: {iou(single, gt_mask):.3f}")
print(f"combined (union)      IoU: {iou(combined, gt_mask):.4f}  (= 9/11)")

# Lower the threshold and a sub-mask that barely grazes the region
# would be admitted too; raise it past a sub-mask's ratio and that
# sub-mask drops out of both readings.
strict = select_overlapping(subset, gt_mask, threshold=0.8)
print("ids surviving a 0.8 threshold:", [i for i, _ in strict.selected])

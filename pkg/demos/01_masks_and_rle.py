"""
Binary masks and run-length encoding
====================================

A segmentation mask is a boolean raster. Stored naively it costs one
byte per pixel; run-length encoded it costs a handful of integers.
This script builds a few masks by hand, encodes them, and shows that
decoding gives the bits back exactly.
"""

import numpy as np

from segrobust import BinaryMask, mask_area, rle_decode, rle_encode

# A 4x6 mask with an L-shaped blob. Runs are counted in row-major
# order, alternating zeros and ones and starting with the zero run,
# so a mask whose first pixel is set simply starts with a 0 count.
bits = np.zeros((4, 6), dtype=bool)
bits[1, 1:4] = True
bits[2, 1] = True
mask = BinaryMask(bits)

print("mask:")
for row in bits.astype(int):
    print("   ", "".join(".#"[v] for v in row))

rle = rle_encode(mask)
print("counts:", list(rle.counts))
print("area:  ", mask_area(mask), "(sum of the one-runs:", sum(rle.counts[1::2]), ")")

# Round trip: decode back to bits and compare.
back = rle_decode(rle)
print("round trip exact:", np.array_equal(back.bits, mask.bits))

# A mask whose first pixel is set gets a leading zero count.
first_on = BinaryMask(np.array([[True, False], [True, False]]))
print("first pixel set ->", list(rle_encode(first_on).counts))

# The encoding is canonical: equal masks give equal counts, so byte
# equality of documents follows from mask equality.
rng = np.random.default_rng(0)
random_bits = rng.random((32, 32)) < 0.4
again = rle_encode(BinaryMask(random_bits))
once = rle_encode(BinaryMask(random_bits.copy()))
print("canonical on a random mask:", list(once.counts) == list(again.counts))

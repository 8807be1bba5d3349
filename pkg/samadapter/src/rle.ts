/**
 * Run-length mask encodings.
 *
 * The mask generator reports COCO-style uncompressed counts, which scan
 * the raster in column-major order. The harness's documents use
 * row-major counts with a canonical shape: runs alternate zeros and
 * ones starting with the zero run, every run after the first is
 * positive, and the counts sum to width * height. All conversion
 * between the two lives here so nothing downstream ever sees the
 * foreign encoding.
 */

export class RleError extends Error {}

function checkCounts(counts: number[], width: number, height: number): void {
  let total = 0;
  for (let i = 0; i < counts.length; i++) {
    const run = counts[i];
    if (!Number.isInteger(run)) {
      throw new RleError(`count at index ${i} is not an integer: ${run}`);
    }
    if (run < 0) {
      throw new RleError(`negative run at index ${i}`);
    }
    if (run === 0 && i > 0) {
      throw new RleError(`interior zero run at index ${i}`);
    }
    total += run;
  }
  if (total !== width * height) {
    throw new RleError(`counts sum to ${total}, expected ${width * height}`);
  }
}

/** Decode canonical row-major counts into one byte per pixel (0 or 1). */
export function decodeRowMajor(counts: number[], width: number, height: number): Uint8Array {
  checkCounts(counts, width, height);
  const bits = new Uint8Array(width * height);
  let pos = 0;
  for (let i = 0; i < counts.length; i++) {
    if (i % 2 === 1) {
      bits.fill(1, pos, pos + counts[i]);
    }
    pos += counts[i];
  }
  return bits;
}

/** Encode a row-major pixel buffer as canonical counts. */
export function encodeRowMajor(bits: Uint8Array, width: number, height: number): number[] {
  if (bits.length !== width * height) {
    throw new RleError(`buffer holds ${bits.length} pixels, expected ${width * height}`);
  }
  const counts: number[] = [];
  let value = 0;
  let run = 0;
  for (let i = 0; i < bits.length; i++) {
    const pixel = bits[i] ? 1 : 0;
    if (pixel === value) {
      run += 1;
    } else {
      counts.push(run);
      value = pixel;
      run = 1;
    }
  }
  counts.push(run);
  return counts;
}

/**
 * Convert column-major counts (the generator's native order) to
 * canonical row-major counts for the same raster.
 */
export function columnMajorToRowMajor(counts: number[], width: number, height: number): number[] {
  checkCounts(counts, width, height);
  const bits = new Uint8Array(width * height);
  let pos = 0;
  for (let i = 0; i < counts.length; i++) {
    if (i % 2 === 1) {
      for (let p = pos; p < pos + counts[i]; p++) {
        const row = p % height;
        const col = (p - row) / height;
        bits[row * width + col] = 1;
      }
    }
    pos += counts[i];
  }
  return encodeRowMajor(bits, width, height);
}

/** Pixel count of a one-region given its canonical counts. */
export function areaOf(counts: number[]): number {
  let area = 0;
  for (let i = 1; i < counts.length; i += 2) {
    area += counts[i];
  }
  return area;
}

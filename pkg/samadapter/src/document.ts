/**
 * The mask document interchange format.
 *
 * One JSON file per frame, named `<stem>.masks.json`, with fixed field
 * order and canonical row-major RLE counts. The harness validates hard
 * on read, so the adapter validates just as hard before writing.
 */

import { areaOf, decodeRowMajor } from "./rle.js";

export const SCHEMA_VERSION = 1;

export interface MaskEntry {
  id: number;
  counts: number[];
  area: number;
}

export interface MaskFileDocument {
  schema_version: number;
  image_id: string;
  width: number;
  height: number;
  segmenter: string;
  masks: MaskEntry[];
}

export class DocumentError extends Error {}

export function maskDocumentName(stem: string): string {
  return `${stem}.masks.json`;
}

/** Serialize with the exact field order readers expect. */
export function renderDocument(doc: MaskFileDocument): string {
  const ordered: MaskFileDocument = {
    schema_version: doc.schema_version,
    image_id: doc.image_id,
    width: doc.width,
    height: doc.height,
    segmenter: doc.segmenter,
    masks: doc.masks.map((m) => ({ id: m.id, counts: m.counts, area: m.area })),
  };
  return JSON.stringify(ordered) + "\n";
}

export function validateDocument(doc: MaskFileDocument): void {
  if (doc.schema_version !== SCHEMA_VERSION) {
    throw new DocumentError(`unsupported schema_version ${doc.schema_version}`);
  }
  if (typeof doc.image_id !== "string" || doc.image_id.length === 0) {
    throw new DocumentError("image_id must be a non-empty string");
  }
  if (!Number.isInteger(doc.width) || !Number.isInteger(doc.height) || doc.width < 1 || doc.height < 1) {
    throw new DocumentError(`bad dimensions ${doc.width}x${doc.height}`);
  }
  if (typeof doc.segmenter !== "string") {
    throw new DocumentError("segmenter must be a string");
  }
  const seen = new Set<number>();
  for (const mask of doc.masks) {
    if (!Number.isInteger(mask.id) || mask.id < 0) {
      throw new DocumentError(`mask id must be a non-negative integer, got ${mask.id}`);
    }
    if (seen.has(mask.id)) {
      throw new DocumentError(`duplicate mask id ${mask.id}`);
    }
    seen.add(mask.id);
    decodeRowMajor(mask.counts, doc.width, doc.height);
    if (mask.area !== areaOf(mask.counts)) {
      throw new DocumentError(`mask ${mask.id}: stored area ${mask.area} != decoded ${areaOf(mask.counts)}`);
    }
  }
}

import * as fs from "node:fs";
import * as path from "node:path";

import type { AdapterConfig } from "./config.js";
import {
  maskDocumentName,
  renderDocument,
  validateDocument,
  SCHEMA_VERSION,
  type MaskFileDocument,
} from "./document.js";
import { runDriver } from "./driver.js";
import { areaOf, columnMajorToRowMajor, RleError } from "./rle.js";

export class CheckpointMissingError extends Error {}
export class AdapterError extends Error {}

export interface SkippedFrame {
  image: string;
  reason: string;
}

export interface GenerateSummary {
  written: string[];
  skipped: SkippedFrame[];
  versions: Record<string, string>;
}

const IMAGE_SUFFIXES = new Set([".png", ".jpg", ".jpeg"]);

function listImages(dir: string): string[] {
  let entries: string[];
  try {
    entries = fs.readdirSync(dir);
  } catch (err) {
    throw new AdapterError(`cannot read image directory ${dir}: ${(err as Error).message}`);
  }
  const images = entries
    .filter((name) => IMAGE_SUFFIXES.has(path.extname(name).toLowerCase()))
    .sort();
  if (images.length === 0) {
    throw new AdapterError(`no images found under ${dir}`);
  }
  return images;
}

function documentFor(
  cfg: AdapterConfig,
  imagePath: string,
): { doc: MaskFileDocument; versions: Record<string, string> } {
  const result = runDriver(cfg, imagePath);
  const stem = path.basename(imagePath, path.extname(imagePath));
  const versions = result.versions ?? {};
  const masks = result.masks.map((mask, index) => {
    const [h, w] = mask.size;
    if (h !== result.height || w !== result.width) {
      throw new RleError(`mask ${index} size ${w}x${h} disagrees with frame ${result.width}x${result.height}`);
    }
    const counts = columnMajorToRowMajor(mask.counts, w, h);
    const area = areaOf(counts);
    if (mask.area !== undefined && mask.area !== area) {
      throw new RleError(`mask ${index}: driver area ${mask.area} != decoded ${area}`);
    }
    // Ids follow the generator's output order.
    return { id: index, counts, area };
  });
  const doc: MaskFileDocument = {
    schema_version: SCHEMA_VERSION,
    image_id: stem,
    width: result.width,
    height: result.height,
    segmenter: `sam-automatic-${cfg.modelType}/${versions["segment_anything"] ?? "unknown"}`,
    masks,
  };
  return { doc, versions };
}

/**
 * Segment every frame under cfg.images and write one validated mask
 * document per frame under cfg.out. Frames that fail are logged and
 * skipped; the run summary (including library versions, since the
 * generator makes no bitwise promises across versions) lands in
 * adapter_run.json next to the documents.
 */
export function generateMasks(cfg: AdapterConfig): GenerateSummary {
  if (!fs.existsSync(cfg.checkpoint)) {
    throw new CheckpointMissingError(`checkpoint missing: ${cfg.checkpoint}`);
  }
  const images = listImages(cfg.images);
  fs.mkdirSync(cfg.out, { recursive: true });

  const written: string[] = [];
  const skipped: SkippedFrame[] = [];
  let versions: Record<string, string> = {};
  for (const name of images) {
    try {
      const { doc, versions: frameVersions } = documentFor(cfg, path.join(cfg.images, name));
      validateDocument(doc);
      const outPath = path.join(cfg.out, maskDocumentName(doc.image_id));
      fs.writeFileSync(outPath, renderDocument(doc), "utf8");
      written.push(outPath);
      versions = frameVersions;
    } catch (err) {
      const reason = (err as Error).message;
      console.error(`skipping ${name}: ${reason}`);
      skipped.push({ image: name, reason });
    }
  }

  const runReport = {
    model_type: cfg.modelType,
    device: cfg.device,
    versions,
    written: written.map((p) => path.basename(p)),
    skipped,
  };
  fs.writeFileSync(path.join(cfg.out, "adapter_run.json"), JSON.stringify(runReport, null, 2) + "\n", "utf8");
  return { written, skipped, versions };
}

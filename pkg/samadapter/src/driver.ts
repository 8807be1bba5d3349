import { spawnSync } from "node:child_process";

import type { AdapterConfig } from "./config.js";

/**
 * One generated mask as the driver reports it: COCO-style uncompressed
 * counts in column-major order plus the raster size as [height, width].
 */
export interface DriverMask {
  counts: number[];
  size: [number, number];
  area?: number;
}

export interface DriverResult {
  image: string;
  width: number;
  height: number;
  versions: Record<string, string>;
  masks: DriverMask[];
}

export class DriverError extends Error {}

const MAX_OUTPUT_BYTES = 512 * 1024 * 1024;

/**
 * Run the driver on a single frame and parse its JSON report.
 *
 * One process per frame keeps failures isolated: a frame the model
 * chokes on kills only its own process, not the batch.
 */
export function runDriver(cfg: AdapterConfig, imagePath: string): DriverResult {
  const args = [
    cfg.driver,
    "--checkpoint", cfg.checkpoint,
    "--model-type", cfg.modelType,
    "--device", cfg.device,
    "--image", imagePath,
  ];
  const proc = spawnSync(cfg.python, args, { encoding: "utf8", maxBuffer: MAX_OUTPUT_BYTES });
  if (proc.error) {
    throw new DriverError(`could not spawn ${cfg.python}: ${proc.error.message}`);
  }
  if (proc.status !== 0) {
    const stderr = (proc.stderr ?? "").trim().split("\n").slice(-3).join(" | ");
    throw new DriverError(`driver exited with status ${proc.status}: ${stderr}`);
  }
  let parsed: unknown;
  try {
    parsed = JSON.parse(proc.stdout);
  } catch {
    throw new DriverError("driver produced unparseable output");
  }
  const result = parsed as DriverResult;
  if (
    typeof result.width !== "number" ||
    typeof result.height !== "number" ||
    !Array.isArray(result.masks)
  ) {
    throw new DriverError("driver report is missing width/height/masks");
  }
  return result;
}

import { fileURLToPath } from "node:url";

/**
 * Everything one adapter run needs. Generator parameters are
 * deliberately absent: the automatic mask generator runs with its
 * defaults untouched, so two installs of the same model disagree only
 * where the upstream library itself does.
 */
export interface AdapterConfig {
  /** Path to the model checkpoint (.pth). */
  checkpoint: string;
  /** Directory of input frames (png/jpg). */
  images: string;
  /** Directory that receives one mask document per frame. */
  out: string;
  /** Model variant registered with the checkpoint, e.g. vit_h. */
  modelType: string;
  /** Torch device string. */
  device: string;
  /** Python interpreter used to run the driver. */
  python: string;
  /** Driver script; the bundled one talks to segment_anything. */
  driver: string;
}

export class ConfigError extends Error {}

export function defaultDriverPath(): string {
  return fileURLToPath(new URL("../python/sam_driver.py", import.meta.url));
}

export interface AdapterConfigInput {
  checkpoint: string;
  images: string;
  out: string;
  modelType?: string;
  device?: string;
  python?: string;
  driver?: string;
}

export function resolveConfig(input: AdapterConfigInput): AdapterConfig {
  for (const key of ["checkpoint", "images", "out"] as const) {
    if (!input[key]) {
      throw new ConfigError(`missing required option: ${key}`);
    }
  }
  return {
    checkpoint: input.checkpoint,
    images: input.images,
    out: input.out,
    modelType: input.modelType ?? "vit_h",
    device: input.device ?? "cpu",
    python: input.python ?? "python3",
    driver: input.driver ?? defaultDriverPath(),
  };
}

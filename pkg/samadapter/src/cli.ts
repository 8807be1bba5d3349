#!/usr/bin/env node
import * as fs from "node:fs";
import { fileURLToPath } from "node:url";

import yargs from "yargs";

import { ConfigError, resolveConfig } from "./config.js";
import { AdapterError, CheckpointMissingError, generateMasks } from "./generate.js";
import { DriverError } from "./driver.js";
import { DocumentError } from "./document.js";
import { RleError } from "./rle.js";

export const EXIT_OK = 0;
export const EXIT_FATAL = 1;
export const EXIT_SKIPS = 2;

export async function main(argv: string[]): Promise<number> {
  const args = await yargs(argv)
    .scriptName("samadapter")
    .usage("$0 --checkpoint <path> --images <dir> --out <dir>")
    .option("checkpoint", { type: "string", demandOption: true, describe: "model checkpoint (.pth)" })
    .option("images", { type: "string", demandOption: true, describe: "directory of input frames" })
    .option("out", { type: "string", demandOption: true, describe: "directory for mask documents" })
    .option("model-type", { type: "string", default: "vit_h", describe: "model variant for the checkpoint" })
    .option("device", { type: "string", default: "cpu", describe: "torch device" })
    .option("python", { type: "string", default: "python3", describe: "python interpreter for the driver" })
    .option("driver", { type: "string", describe: "override the bundled generator driver script" })
    .strict()
    .help()
    .fail((msg, err) => {
      throw err ?? new ConfigError(msg);
    })
    .parse();

  const cfg = resolveConfig({
    checkpoint: args.checkpoint,
    images: args.images,
    out: args.out,
    modelType: args["model-type"],
    device: args.device,
    python: args.python,
    driver: args.driver,
  });
  const summary = generateMasks(cfg);
  console.log(`wrote ${summary.written.length} mask documents under ${cfg.out}`);
  if (summary.skipped.length > 0) {
    console.error(`skipped ${summary.skipped.length} frame(s); see adapter_run.json`);
    return EXIT_SKIPS;
  }
  return EXIT_OK;
}

export async function run(argv: string[]): Promise<number> {
  try {
    return await main(argv);
  } catch (err) {
    if (
      err instanceof ConfigError ||
      err instanceof CheckpointMissingError ||
      err instanceof AdapterError ||
      err instanceof DriverError ||
      err instanceof DocumentError ||
      err instanceof RleError
    ) {
      console.error(`error: ${err.message}`);
      return EXIT_FATAL;
    }
    throw err;
  }
}

const isDirectRun = (() => {
  if (!process.argv[1]) {
    return false;
  }
  try {
    return fs.realpathSync(process.argv[1]) === fileURLToPath(import.meta.url);
  } catch {
    return false;
  }
})();

if (isDirectRun) {
  run(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}

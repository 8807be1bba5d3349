import { spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { run } from "../src/cli.js";
import { resolveConfig, type AdapterConfig } from "../src/config.js";
import { validateDocument, type MaskFileDocument } from "../src/document.js";
import { CheckpointMissingError, generateMasks, type GenerateSummary } from "../src/generate.js";
import { decodeRowMajor, encodeRowMajor } from "../src/rle.js";
import { writeRgbPng } from "./helpers/png.js";

const STUB_DRIVER = fileURLToPath(new URL("../python/stub_driver.py", import.meta.url));

/**
 * Smoke corpus: three frames of different sizes, each with one bright
 * rectangle (the object) on a dark background. The rectangle sits inside
 * the top-left quadrant and covers at most half of it, so the stub
 * driver's quadrant masks never reach the harness's overlap threshold
 * while its two bright-region halves are entirely inside the object.
 */
interface SmokeFrame {
  stem: string;
  width: number;
  height: number;
  /** x0, y0 inclusive; x1, y1 exclusive */
  rect: [number, number, number, number];
}

const FRAMES: SmokeFrame[] = [
  { stem: "frame_000", width: 48, height: 32, rect: [4, 3, 16, 11] },
  { stem: "frame_001", width: 40, height: 36, rect: [2, 4, 12, 16] },
  { stem: "frame_002", width: 56, height: 28, rect: [6, 2, 20, 12] },
];

function rectArea(frame: SmokeFrame): number {
  const [x0, y0, x1, y1] = frame.rect;
  return (x1 - x0) * (y1 - y0);
}

function rectBits(frame: SmokeFrame): Uint8Array {
  const [x0, y0, x1, y1] = frame.rect;
  const bits = new Uint8Array(frame.width * frame.height);
  for (let y = y0; y < y1; y++) {
    for (let x = x0; x < x1; x++) {
      bits[y * frame.width + x] = 1;
    }
  }
  return bits;
}

function writeCorpus(root: string): void {
  for (const frame of FRAMES) {
    const { width, height } = frame;
    const inRect = rectBits(frame);
    const image = new Uint8Array(width * height * 3);
    const gt = new Uint8Array(width * height * 3);
    for (let y = 0; y < height; y++) {
      for (let x = 0; x < width; x++) {
        const p = y * width + x;
        if (inRect[p]) {
          image.set([230, 225, 210], p * 3);
          gt.set([255, 255, 255], p * 3);
        } else {
          // every channel stays well below the stub's brightness cut
          image.set([30 + ((x + y) % 40), 60, 50], p * 3);
        }
      }
    }
    writeRgbPng(path.join(root, "images", `${frame.stem}.png`), width, height, image);
    writeRgbPng(path.join(root, "gt", `${frame.stem}.png`), width, height, gt);
  }
}

const CONFORMANCE_SCRIPT = `
import json
import sys
from pathlib import Path

from segrobust import read_masks, rle_encode

for arg in sys.argv[1:]:
    subset = read_masks(arg)
    doc = json.loads(Path(arg).read_text(encoding="utf-8"))
    entries = {entry["id"]: entry for entry in doc["masks"]}
    seen = set()
    for mask_id, mask in subset:
        entry = entries[mask_id]
        if list(rle_encode(mask).counts) != entry["counts"]:
            raise SystemExit(f"{arg}: mask {mask_id} counts changed across the round trip")
        if mask.area != entry["area"]:
            raise SystemExit(f"{arg}: mask {mask_id} area disagrees with the reader")
        seen.add(mask_id)
    if seen != set(entries):
        raise SystemExit(f"{arg}: reader dropped masks")
print(f"ok {len(sys.argv) - 1} documents")
`;

let tmp: string;
let corpusRoot: string;
let imagesDir: string;
let checkpoint: string;
let masksRoot: string;
let outDir: string;
let cfg: AdapterConfig;
let summary: GenerateSummary;

beforeAll(() => {
  tmp = fs.mkdtempSync(path.join(os.tmpdir(), "samadapter-test-"));
  corpusRoot = path.join(tmp, "smoke");
  imagesDir = path.join(corpusRoot, "images");
  writeCorpus(corpusRoot);
  checkpoint = path.join(tmp, "checkpoint.pth");
  fs.writeFileSync(checkpoint, "stand-in checkpoint bytes");
  masksRoot = path.join(tmp, "masks");
  outDir = path.join(masksRoot, "clean", "s0");
  cfg = resolveConfig({ checkpoint, images: imagesDir, out: outDir, driver: STUB_DRIVER });
  summary = generateMasks(cfg);
});

afterAll(() => {
  fs.rmSync(tmp, { recursive: true, force: true });
});

function readDocument(dir: string, stem: string): MaskFileDocument {
  return JSON.parse(fs.readFileSync(path.join(dir, `${stem}.masks.json`), "utf8"));
}

describe("generateMasks on the smoke corpus", () => {
  it("writes a validated document for every frame", () => {
    expect(summary.skipped).toEqual([]);
    expect(summary.written.map((p) => path.basename(p))).toEqual(
      FRAMES.map((f) => `${f.stem}.masks.json`),
    );
    for (const frame of FRAMES) {
      const doc = readDocument(outDir, frame.stem);
      expect(() => validateDocument(doc)).not.toThrow();
      expect(doc.image_id).toBe(frame.stem);
      expect(doc.width).toBe(frame.width);
      expect(doc.height).toBe(frame.height);
      expect(doc.segmenter).toBe("sam-automatic-vit_h/stub-0.0");
      expect(doc.masks.map((m) => m.id)).toEqual([0, 1, 2, 3, 4, 5]);
      for (const mask of doc.masks) {
        // canonical counts: decoding and re-encoding is the identity
        const bits = decodeRowMajor(mask.counts, frame.width, frame.height);
        expect(encodeRowMajor(bits, frame.width, frame.height)).toEqual(mask.counts);
        expect(mask.area).toBeGreaterThan(0);
      }
    }
  });

  it("converts the driver's column-major masks to the right pixels", () => {
    for (const frame of FRAMES) {
      const doc = readDocument(outDir, frame.stem);
      // masks 4 and 5 are the bright-region halves; together they must
      // tile the rectangle exactly.
      const union = new Uint8Array(frame.width * frame.height);
      for (const mask of doc.masks.slice(4)) {
        decodeRowMajor(mask.counts, frame.width, frame.height).forEach((bit, i) => {
          union[i] |= bit;
        });
      }
      expect(Array.from(union)).toEqual(Array.from(rectBits(frame)));
      expect(doc.masks[4].area + doc.masks[5].area).toBe(rectArea(frame));
      // the quadrants partition the frame
      const quadTotal = doc.masks.slice(0, 4).reduce((acc, m) => acc + m.area, 0);
      expect(quadTotal).toBe(frame.width * frame.height);
    }
  });

  it("records the run in adapter_run.json", () => {
    const report = JSON.parse(fs.readFileSync(path.join(outDir, "adapter_run.json"), "utf8"));
    expect(report.model_type).toBe("vit_h");
    expect(report.device).toBe("cpu");
    expect(report.versions["segment_anything"]).toBe("stub-0.0");
    expect(report.written).toEqual(FRAMES.map((f) => `${f.stem}.masks.json`));
    expect(report.skipped).toEqual([]);
  });

  it("is byte-identical across reruns", () => {
    const outDir2 = path.join(tmp, "masks-rerun");
    generateMasks(resolveConfig({ checkpoint, images: imagesDir, out: outDir2, driver: STUB_DRIVER }));
    for (const name of [...FRAMES.map((f) => `${f.stem}.masks.json`), "adapter_run.json"]) {
      const a = fs.readFileSync(path.join(outDir, name));
      const b = fs.readFileSync(path.join(outDir2, name));
      expect(a.equals(b), `${name} differs between runs`).toBe(true);
    }
  });
});

describe("failure handling", () => {
  it("refuses to start without the checkpoint", async () => {
    const missing = path.join(tmp, "no-such-checkpoint.pth");
    expect(() =>
      generateMasks(resolveConfig({ checkpoint: missing, images: imagesDir, out: path.join(tmp, "x"), driver: STUB_DRIVER })),
    ).toThrow(CheckpointMissingError);
    const code = await run([
      "--checkpoint", missing,
      "--images", imagesDir,
      "--out", path.join(tmp, "x"),
      "--driver", STUB_DRIVER,
    ]);
    expect(code).toBe(1);
  });

  it("rejects a call with required options missing", async () => {
    expect(await run([])).toBe(1);
  });

  it("skips an unreadable frame and reports exit code 2", async () => {
    const brokenImages = path.join(tmp, "images-broken");
    fs.mkdirSync(brokenImages, { recursive: true });
    for (const frame of FRAMES) {
      fs.copyFileSync(
        path.join(imagesDir, `${frame.stem}.png`),
        path.join(brokenImages, `${frame.stem}.png`),
      );
    }
    fs.writeFileSync(path.join(brokenImages, "bad.png"), "this is not a png");
    const brokenOut = path.join(tmp, "masks-broken");
    const code = await run([
      "--checkpoint", checkpoint,
      "--images", brokenImages,
      "--out", brokenOut,
      "--driver", STUB_DRIVER,
    ]);
    expect(code).toBe(2);
    for (const frame of FRAMES) {
      expect(fs.existsSync(path.join(brokenOut, `${frame.stem}.masks.json`))).toBe(true);
    }
    const report = JSON.parse(fs.readFileSync(path.join(brokenOut, "adapter_run.json"), "utf8"));
    expect(report.skipped).toHaveLength(1);
    expect(report.skipped[0].image).toBe("bad.png");
  });
});

describe("conformance with the benchmark harness", () => {
  it("every document passes the reference reader and survives its round trip", () => {
    const script = path.join(tmp, "conformance.py");
    fs.writeFileSync(script, CONFORMANCE_SCRIPT);
    const docs = FRAMES.map((f) => path.join(outDir, `${f.stem}.masks.json`));
    const proc = spawnSync("python3", [script, ...docs], { encoding: "utf8" });
    expect(proc.stderr, proc.stderr).toBe("");
    expect(proc.status).toBe(0);
    expect(proc.stdout).toContain("ok 3 documents");
  });

  it("the harness evaluates the documents without any code changes", () => {
    const records = path.join(tmp, "records.jsonl");
    const proc = spawnSync(
      "python3",
      [
        "-m", "segrobust.cli", "evaluate",
        "--corpus", corpusRoot,
        "--masks", masksRoot,
        "--severities", "0",
        "--out", records,
      ],
      { encoding: "utf8" },
    );
    expect(proc.status, proc.stderr).toBe(0);
    const rows = fs
      .readFileSync(records, "utf8")
      .trim()
      .split("\n")
      .map((line) => JSON.parse(line));
    expect(rows).toHaveLength(FRAMES.length * 2);
    for (const row of rows) {
      expect(row.kind).toBe("clean");
      expect(row.severity).toBe(0);
      expect(row.n_submasks).toBe(6);
      expect(row.n_selected).toBe(2);
      expect(row.segmenter).toBe("sam-automatic-vit_h/stub-0.0");
      if (row.mode === "combined") {
        // the two selected halves tile the object exactly
        expect(row.iou).toBe(1.0);
      } else {
        expect(row.iou).toBeGreaterThan(0);
        expect(row.iou).toBeLessThan(1);
      }
    }
    const modes = rows.map((r) => r.mode).sort();
    expect(modes).toEqual(["combined", "combined", "combined", "single", "single", "single"]);
  });
});

export { resolveConfig, defaultDriverPath, ConfigError, type AdapterConfig, type AdapterConfigInput } from "./config.js";
export {
  maskDocumentName,
  renderDocument,
  validateDocument,
  DocumentError,
  SCHEMA_VERSION,
  type MaskEntry,
  type MaskFileDocument,
} from "./document.js";
export { runDriver, DriverError, type DriverMask, type DriverResult } from "./driver.js";
export {
  generateMasks,
  AdapterError,
  CheckpointMissingError,
  type GenerateSummary,
  type SkippedFrame,
} from "./generate.js";
export { areaOf, columnMajorToRowMajor, decodeRowMajor, encodeRowMajor, RleError } from "./rle.js";
export { main, run, EXIT_OK, EXIT_FATAL, EXIT_SKIPS } from "./cli.js";

export {
  BindingSession,
  type DelexMode,
  type DelexResult,
  type MineOptions,
  type MineResult,
  type PrecisionRecallF1,
  type RelexOptions,
  type ScoreMetrics,
  type ScoreResult,
  type SessionOptions,
} from "./session.js";
export {
  CliError,
  CliLaunchError,
  MalformedOutputError,
  VersionMismatchError,
  type CliErrorKind,
} from "./errors.js";
export { BINDING_VERSION } from "./version.js";

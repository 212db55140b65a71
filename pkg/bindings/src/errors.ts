/**
 * Error types surfaced by the bindings.
 *
 * The core executable signals failure through its exit code and a
 * human-readable `error: ...` line on stderr. The bindings translate that
 * contract into native exceptions without reinterpreting it: the exit code
 * picks the error kind, and the stderr text becomes the message.
 */

/**
 * How the executable classified a failure:
 *
 * - `"usage"`    — exit code 1: bad flags, unknown subcommand, invalid
 *                  enum value. The invocation itself was malformed.
 * - `"data"`     — exit code 2: the inputs were unreadable or malformed
 *                  (missing files, bad encodings, mismatched documents,
 *                  invalid profiles).
 * - `"abnormal"` — any other exit code, or death by signal.
 */
export type CliErrorKind = "usage" | "data" | "abnormal";

function kindForExit(exitCode: number | null): CliErrorKind {
  if (exitCode === 1) return "usage";
  if (exitCode === 2) return "data";
  return "abnormal";
}

/** First `error: ...` line of stderr, if the executable printed one. */
function extractErrorLine(stderr: string): string | undefined {
  for (const line of stderr.split("\n")) {
    const trimmed = line.trim();
    if (trimmed.startsWith("error:")) {
      return trimmed.slice("error:".length).trim();
    }
  }
  return undefined;
}

/** The executable ran and exited unsuccessfully. */
export class CliError extends Error {
  /** Failure class derived from the exit code. */
  readonly kind: CliErrorKind;
  /** Exit code, or null when the process died from a signal. */
  readonly exitCode: number | null;
  /** Terminating signal, when there was one. */
  readonly signal: NodeJS.Signals | null;
  /** Complete stderr of the failed invocation. */
  readonly stderr: string;
  /** Subcommand that failed (e.g. "delex", "score"). */
  readonly subcommand: string;

  constructor(
    subcommand: string,
    exitCode: number | null,
    signal: NodeJS.Signals | null,
    stderr: string,
  ) {
    const detail =
      extractErrorLine(stderr) ??
      (signal !== null
        ? `terminated by signal ${signal}`
        : `exited with code ${exitCode ?? "unknown"}`);
    super(`${subcommand} failed: ${detail}`);
    this.name = "CliError";
    this.kind = kindForExit(exitCode);
    this.exitCode = exitCode;
    this.signal = signal;
    this.stderr = stderr;
    this.subcommand = subcommand;
  }
}

/** The executable could not be started at all (not found, not executable). */
export class CliLaunchError extends Error {
  /** Path or command name that failed to launch. */
  readonly cliPath: string;
  override readonly cause: Error;

  constructor(cliPath: string, cause: Error) {
    super(`could not launch "${cliPath}": ${cause.message}`);
    this.name = "CliLaunchError";
    this.cliPath = cliPath;
    this.cause = cause;
  }
}

/**
 * The executable succeeded but printed something these bindings cannot
 * parse. Indicates a version skew or a corrupted installation, never a
 * data problem with caller inputs.
 */
export class MalformedOutputError extends Error {
  /** Subcommand whose output failed to parse. */
  readonly subcommand: string;
  /** The unparseable output. */
  readonly output: string;

  constructor(subcommand: string, output: string, reason: string) {
    super(`${subcommand} produced unparseable output (${reason})`);
    this.name = "MalformedOutputError";
    this.subcommand = subcommand;
    this.output = output;
  }
}

/**
 * The executable's version is incompatible with these bindings.
 * Byte parity is only guaranteed between matching major.minor releases.
 */
export class VersionMismatchError extends Error {
  /** Version reported by the executable. */
  readonly cliVersion: string;
  /** Version these bindings are pinned to. */
  readonly bindingVersion: string;

  constructor(cliVersion: string, bindingVersion: string) {
    super(
      `executable reports version ${cliVersion}, but these bindings are pinned to ` +
        `${bindingVersion}; install matching versions`,
    );
    this.name = "VersionMismatchError";
    this.cliVersion = cliVersion;
    this.bindingVersion = bindingVersion;
  }
}

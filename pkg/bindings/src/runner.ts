import { spawnSync } from "node:child_process";

import { CliError, CliLaunchError } from "./errors.js";

/** Captured streams of one successful invocation. */
export interface CliResult {
  stdout: string;
  stderr: string;
}

// Generous ceiling for captured streams; large artifacts travel through
// files, so stdout/stderr stay small in practice.
const MAX_CAPTURED_BYTES = 256 * 1024 * 1024;

/**
 * Run the executable once, synchronously, and return its output streams.
 *
 * @throws CliLaunchError when the process cannot be started.
 * @throws CliError when it exits non-zero or dies from a signal.
 */
export function runCli(cliPath: string, args: readonly string[]): CliResult {
  const proc = spawnSync(cliPath, args as string[], {
    encoding: "utf8",
    maxBuffer: MAX_CAPTURED_BYTES,
    windowsHide: true,
  });
  if (proc.error !== undefined) {
    throw new CliLaunchError(cliPath, proc.error);
  }
  if (proc.status !== 0) {
    throw new CliError(args[0] ?? "", proc.status, proc.signal, proc.stderr ?? "");
  }
  return { stdout: proc.stdout ?? "", stderr: proc.stderr ?? "" };
}

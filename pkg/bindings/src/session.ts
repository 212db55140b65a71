/**
 * Pipeline bindings for the prolex executable.
 *
 * Every operation shells out to the installed command-line tool and moves
 * data through temporary files in its documented formats. No linguistic
 * logic lives on this side of the process boundary, which is what makes the
 * parity guarantee possible: for identical inputs and options, a session's
 * results are byte-identical to what the command line produces.
 *
 * A session is cheap to construct and holds no open resources, but its
 * methods are synchronous and must not be shared across worker threads —
 * create one session per worker.
 */

import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { MalformedOutputError, VersionMismatchError } from "./errors.js";
import { runCli } from "./runner.js";
import { BINDING_VERSION } from "./version.js";

/**
 * Placeholder vocabulary for delexicalization:
 *
 * - `"pos"`  — the two part-of-speech tags (`PRP`, `PRP$`).
 * - `"case"` — five case-resolved placeholders (`PRP:nom`, `PRP:acc`,
 *              `PRP:refl`, `PRP:posind`, `PRP$`). Required when the text
 *              is to be relexicalized later.
 */
export type DelexMode = "pos" | "case";

/** One precision/recall/F1 triple, each in [0, 1]. */
export interface PrecisionRecallF1 {
  precision: number;
  recall: number;
  f1: number;
}

/** Parsed coreference scores for one key/response comparison. */
export interface ScoreMetrics {
  /** Link-based metric. */
  muc: PrecisionRecallF1;
  /** Entity-alignment metric. */
  ceafPhi4: PrecisionRecallF1;
  /** Per-mention metric. */
  b3: PrecisionRecallF1;
  /** Componentwise arithmetic mean of the three metrics above. */
  average: PrecisionRecallF1;
}

/** Result of scoring a response file against a key file. */
export interface ScoreResult {
  /** Aligned text table exactly as the command line prints it. */
  table: string;
  /** CSV rendition (`metric,precision,recall,f1` header plus four rows). */
  csv: string;
  /** The CSV parsed into numbers. */
  metrics: ScoreMetrics;
}

/** Result of delexicalizing a text. */
export interface DelexResult {
  /** Input text with every third-person pronoun replaced by its placeholder. */
  text: string;
  /**
   * Per-placeholder count table (TSV: placeholder column, one column per
   * split label, total column), byte-identical to the command line's
   * report file.
   */
  report: string;
}

/** Result of mining reflexive-shaped tokens from a corpus. */
export interface MineResult {
  /** Token/count TSV, descending by count. */
  counts: string;
  /** Rank-frequency CSV (`count,num_tokens` rows). */
  ranks: string;
}

/** Options for {@link BindingSession.relexText}. */
export interface RelexOptions {
  /** Set id used by the mirrored policy when the profile lists no sets. */
  fallbackSet?: string;
  /** Replacement token used by the avoid policy (default: the core's marker). */
  avoidMarker?: string;
}

/** Options for {@link BindingSession.mine}. */
export interface MineOptions {
  /** Stoplist file replacing the builtin list. */
  stoplistPath?: string;
  /** Suffixes to mine instead of the defaults. */
  suffixes?: readonly string[];
  /** Minimum token length kept by the miner. */
  minLen?: number;
  /** Keep first/second-person reflexives instead of filtering them. */
  keepNonThirdPerson?: boolean;
  /** Drop the well-known third-person reflexives from the results. */
  excludeStandardReflexives?: boolean;
}

/** Construction options for {@link BindingSession}. */
export interface SessionOptions {
  /** Executable to invoke (default: `"prolex"` resolved through PATH). */
  cliPath?: string;
  /**
   * Extra pronoun-set file loaded for delexicalization and
   * relexicalization, in the seven-column TSV format.
   */
  setsPath?: string;
  /**
   * Column label used for delexicalization reports (default: `"text"`).
   * Pinning the label keeps reports independent of internal file names.
   */
  splitLabel?: string;
}

function withTempDir<T>(fn: (dir: string) => T): T {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "prolex-bind-"));
  try {
    return fn(dir);
  } finally {
    fs.rmSync(dir, { recursive: true, force: true });
  }
}

function detectCoreVersion(cliPath: string): string {
  const { stdout } = runCli(cliPath, ["--version"]);
  const match = stdout.match(/\d+\.\d+\.\d+/);
  if (match === null) {
    throw new MalformedOutputError("--version", stdout, "no semantic version found");
  }
  return match[0];
}

function majorMinor(version: string): string {
  return version.split(".").slice(0, 2).join(".");
}

function parseTriple(
  line: string,
  lineNo: number,
  csv: string,
): PrecisionRecallF1 {
  const cells = line.split(",");
  if (cells.length !== 4) {
    throw new MalformedOutputError("score", csv, `row ${lineNo} has ${cells.length} cells`);
  }
  const [, p, r, f1] = cells;
  const triple = {
    precision: Number(p),
    recall: Number(r),
    f1: Number(f1),
  };
  if (!Number.isFinite(triple.precision) || !Number.isFinite(triple.recall) || !Number.isFinite(triple.f1)) {
    throw new MalformedOutputError("score", csv, `row ${lineNo} has non-numeric cells`);
  }
  return triple;
}

const SCORE_CSV_HEADER = "metric,precision,recall,f1";
const SCORE_CSV_METRICS = ["MUC", "CEAF_phi4", "B3", "AVG"] as const;

function parseScoreCsv(csv: string): ScoreMetrics {
  const lines = csv.split("\n").filter((line) => line.length > 0);
  if (lines[0] !== SCORE_CSV_HEADER) {
    throw new MalformedOutputError("score", csv, "unexpected CSV header");
  }
  if (lines.length !== 1 + SCORE_CSV_METRICS.length) {
    throw new MalformedOutputError("score", csv, `expected ${SCORE_CSV_METRICS.length} metric rows`);
  }
  const rows = new Map<string, PrecisionRecallF1>();
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i]!;
    rows.set(line.slice(0, line.indexOf(",")), parseTriple(line, i, csv));
  }
  for (const metric of SCORE_CSV_METRICS) {
    if (!rows.has(metric)) {
      throw new MalformedOutputError("score", csv, `missing ${metric} row`);
    }
  }
  return {
    muc: rows.get("MUC")!,
    ceafPhi4: rows.get("CEAF_phi4")!,
    b3: rows.get("B3")!,
    average: rows.get("AVG")!,
  };
}

/**
 * One handle to the core executable, exposing the four operation families
 * (delexicalize, relexicalize, mine, score) with guaranteed output parity.
 */
export class BindingSession {
  /** Version reported by the executable (e.g. `"0.1.0"`). */
  readonly version: string;
  /** Executable being invoked. */
  readonly cliPath: string;
  /** Extra pronoun-set file passed to delex/relex calls, when configured. */
  readonly setsPath: string | undefined;
  /** Column label used in delexicalization reports. */
  readonly splitLabel: string;

  /**
   * @throws CliLaunchError when the executable cannot be started.
   * @throws VersionMismatchError when its major.minor differs from
   *         {@link BINDING_VERSION}.
   */
  constructor(options: SessionOptions = {}) {
    this.cliPath = options.cliPath ?? "prolex";
    this.setsPath = options.setsPath;
    this.splitLabel = options.splitLabel ?? "text";
    this.version = detectCoreVersion(this.cliPath);
    if (majorMinor(this.version) !== majorMinor(BINDING_VERSION)) {
      throw new VersionMismatchError(this.version, BINDING_VERSION);
    }
  }

  /**
   * Replace every third-person pronoun in `text` with its placeholder.
   *
   * Whitespace, punctuation, and all non-pronoun tokens are preserved
   * exactly; an empty input yields an empty output and a zero-count report.
   * Concatenation-safe: when `a` ends with a newline,
   * `delexText(a + b)` equals `delexText(a)` followed by `delexText(b)`
   * in the text component.
   */
  delexText(text: string, mode: DelexMode): DelexResult {
    return withTempDir((dir) => {
      const inPath = path.join(dir, "input.txt");
      const outPath = path.join(dir, "output.txt");
      const reportPath = path.join(dir, "report.tsv");
      fs.writeFileSync(inPath, text, "utf8");
      const args = [
        "delex",
        "--format", "text",
        "--mode", mode,
        "--in", inPath,
        "--out", outPath,
        "--report", reportPath,
        "--split", this.splitLabel,
      ];
      if (this.setsPath !== undefined) {
        args.push("--sets", this.setsPath);
      }
      runCli(this.cliPath, args);
      return {
        text: fs.readFileSync(outPath, "utf8"),
        report: fs.readFileSync(reportPath, "utf8"),
      };
    });
  }

  /**
   * Replace case placeholders in `text` with concrete pronouns according
   * to the profile file at `profilePath`.
   *
   * The input must carry case placeholders (`"case"`-mode output);
   * position-only placeholders are rejected by the core as unresolvable.
   */
  relexText(text: string, profilePath: string, options: RelexOptions = {}): string {
    return withTempDir((dir) => {
      const inPath = path.join(dir, "input.txt");
      const outPath = path.join(dir, "output.txt");
      fs.writeFileSync(inPath, text, "utf8");
      const args = [
        "relex",
        "--in", inPath,
        "--out", outPath,
        "--profile", profilePath,
      ];
      if (this.setsPath !== undefined) {
        args.push("--sets", this.setsPath);
      }
      if (options.fallbackSet !== undefined) {
        args.push("--fallback-set", options.fallbackSet);
      }
      if (options.avoidMarker !== undefined) {
        args.push("--avoid-marker", options.avoidMarker);
      }
      runCli(this.cliPath, args);
      return fs.readFileSync(outPath, "utf8");
    });
  }

  /**
   * Mine reflexive-shaped tokens from the corpus files at `inputPaths`,
   * merging counts across files. Returns the token/count TSV and the
   * rank-frequency CSV, byte-identical to the command line's file outputs.
   */
  mine(inputPaths: readonly string[], options: MineOptions = {}): MineResult {
    return withTempDir((dir) => {
      const countsPath = path.join(dir, "counts.tsv");
      const ranksPath = path.join(dir, "ranks.csv");
      const args = ["mine"];
      for (const inputPath of inputPaths) {
        args.push("--in", inputPath);
      }
      if (options.stoplistPath !== undefined) {
        args.push("--stoplist", options.stoplistPath);
      }
      for (const suffix of options.suffixes ?? []) {
        args.push("--suffix", suffix);
      }
      if (options.minLen !== undefined) {
        args.push("--min-len", String(options.minLen));
      }
      if (options.keepNonThirdPerson === true) {
        args.push("--keep-non-third-person");
      }
      if (options.excludeStandardReflexives === true) {
        args.push("--exclude-standard-reflexives");
      }
      args.push("--counts-tsv", countsPath, "--rank-csv", ranksPath);
      runCli(this.cliPath, args);
      return {
        counts: fs.readFileSync(countsPath, "utf8"),
        ranks: fs.readFileSync(ranksPath, "utf8"),
      };
    });
  }

  /**
   * Score the response file against the key file (both CoNLL-2012 format)
   * and return the text table, the CSV rendition, and the parsed numbers.
   *
   * Both files must contain the same documents with identical token
   * sequences; mismatches surface as a `CliError` with kind `"data"`.
   */
  score(keyPath: string, responsePath: string): ScoreResult {
    return withTempDir((dir) => {
      const csvPath = path.join(dir, "scores.csv");
      const { stdout } = runCli(this.cliPath, [
        "score",
        "--key", keyPath,
        "--response", responsePath,
        "--csv", csvPath,
      ]);
      const csv = fs.readFileSync(csvPath, "utf8");
      return { table: stdout, csv, metrics: parseScoreCsv(csv) };
    });
  }
}

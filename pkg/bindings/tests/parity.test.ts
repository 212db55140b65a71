/**
 * Differential tests: every binding operation must produce output
 * byte-identical to an independent invocation of the command-line tool on
 * the same inputs and options. The direct lane below builds its own
 * argument lists and files; it never goes through the binding code.
 */

import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { afterAll, beforeAll, describe, expect, test } from "vitest";

import { BindingSession } from "../src/index.js";
import { generateCorpus, type CorpusManifest } from "./corpus.js";

const CLI = process.env.PROLEX_CLI ?? "prolex";

/** Run the tool directly (not through the bindings) and return stdout. */
function runDirect(args: readonly string[]): string {
  return execFileSync(CLI, args as string[], {
    encoding: "utf8",
    stdio: ["ignore", "pipe", "pipe"],
  });
}

function expectSameBytes(fromBinding: string, directFile: string): void {
  expect(Buffer.from(fromBinding, "utf8").equals(fs.readFileSync(directFile))).toBe(true);
}

const INDICES_10 = Array.from({ length: 10 }, (_, i) => i);
const INDICES_15 = Array.from({ length: 15 }, (_, i) => i);

let corpusDir: string;
let workDir: string;
let manifest: CorpusManifest;
let session: BindingSession;
/** Case-mode delexicalizations of the case corpus files, produced directly. */
let delexedCaseFiles: string[];

beforeAll(() => {
  corpusDir = fs.mkdtempSync(path.join(os.tmpdir(), "prolex-corpus-"));
  workDir = fs.mkdtempSync(path.join(os.tmpdir(), "prolex-direct-"));
  manifest = generateCorpus(corpusDir);
  session = new BindingSession();

  delexedCaseFiles = manifest.delexCaseFiles.map((file, i) => {
    const out = path.join(workDir, `delexed-case-${i}.txt`);
    runDirect([
      "delex", "--format", "text", "--mode", "case",
      "--in", file, "--out", out, "--report", path.join(workDir, `delexed-case-${i}.tsv`),
      "--split", "text",
    ]);
    return out;
  });
});

afterAll(() => {
  fs.rmSync(corpusDir, { recursive: true, force: true });
  fs.rmSync(workDir, { recursive: true, force: true });
});

test("differential corpus holds exactly 50 input files", () => {
  expect(manifest.totalInputFiles).toBe(50);
});

describe("delexicalization parity", () => {
  test.each(INDICES_10)("pos mode, text file %i", (i) => {
    const file = manifest.delexPosFiles[i]!;
    const viaBinding = session.delexText(fs.readFileSync(file, "utf8"), "pos");

    const out = path.join(workDir, `pos-${i}.out`);
    const report = path.join(workDir, `pos-${i}.tsv`);
    runDirect([
      "delex", "--format", "text", "--mode", "pos",
      "--in", file, "--out", out, "--report", report, "--split", "text",
    ]);

    expectSameBytes(viaBinding.text, out);
    expectSameBytes(viaBinding.report, report);
  });

  test.each(INDICES_10)("case mode, text file %i", (i) => {
    const file = manifest.delexCaseFiles[i]!;
    const viaBinding = session.delexText(fs.readFileSync(file, "utf8"), "case");

    const out = path.join(workDir, `case-${i}.out`);
    const report = path.join(workDir, `case-${i}.tsv`);
    runDirect([
      "delex", "--format", "text", "--mode", "case",
      "--in", file, "--out", out, "--report", report, "--split", "text",
    ]);

    expectSameBytes(viaBinding.text, out);
    expectSameBytes(viaBinding.report, report);
  });
});

describe("relexicalization parity", () => {
  // Each delexicalized file is relexicalized under two different policies,
  // covering all five across the corpus.
  const cases = INDICES_10.flatMap((i) => [
    { file: i, profile: i % 5 },
    { file: i, profile: (i + 2) % 5 },
  ]);

  test.each(cases)("delexed file $file with profile $profile", ({ file, profile }) => {
    const spec = manifest.profiles[profile]!;
    const delexed = delexedCaseFiles[file]!;
    const viaBinding = session.relexText(
      fs.readFileSync(delexed, "utf8"),
      spec.path,
      spec.options,
    );

    const out = path.join(workDir, `relex-${file}-${profile}.out`);
    runDirect([
      "relex", "--in", delexed, "--out", out, "--profile", spec.path,
      ...spec.cliArgs,
    ]);

    expectSameBytes(viaBinding, out);
  });
});

describe("mining parity", () => {
  test.each(INDICES_15)("mining corpus %i", (i) => {
    const spec = manifest.mineSpecs[i]!;
    const viaBinding = session.mine([spec.path], spec.options);

    const counts = path.join(workDir, `mine-${i}.tsv`);
    const ranks = path.join(workDir, `mine-${i}.csv`);
    runDirect([
      "mine", "--in", spec.path, ...spec.cliArgs,
      "--counts-tsv", counts, "--rank-csv", ranks,
    ]);

    expectSameBytes(viaBinding.counts, counts);
    expectSameBytes(viaBinding.ranks, ranks);
  });

  test("multi-file merge equals the direct multi-input invocation", () => {
    const paths = [0, 5, 10].map((i) => manifest.mineSpecs[i]!.path);
    const viaBinding = session.mine(paths);

    const counts = path.join(workDir, "mine-merged.tsv");
    const ranks = path.join(workDir, "mine-merged.csv");
    runDirect([
      "mine",
      ...paths.flatMap((p) => ["--in", p]),
      "--counts-tsv", counts, "--rank-csv", ranks,
    ]);

    expectSameBytes(viaBinding.counts, counts);
    expectSameBytes(viaBinding.ranks, ranks);
  });
});

describe("scoring parity", () => {
  const pairIndices = Array.from({ length: 8 }, (_, i) => i);

  test.each(pairIndices)("score pair %i", (i) => {
    const pair = manifest.scorePairs[i]!;
    const viaBinding = session.score(pair.keyPath, pair.responsePath);

    const csv = path.join(workDir, `score-${i}.csv`);
    const table = runDirect([
      "score", "--key", pair.keyPath, "--response", pair.responsePath, "--csv", csv,
    ]);

    expect(viaBinding.table).toBe(table);
    expectSameBytes(viaBinding.csv, csv);

    // The parsed numbers must be exactly the CSV's numbers.
    const csvText = fs.readFileSync(csv, "utf8");
    const row = csvText.split("\n").find((line) => line.startsWith("AVG,"))!;
    const [, p, r, f1] = row.split(",");
    expect(viaBinding.metrics.average.precision).toBe(Number(p));
    expect(viaBinding.metrics.average.recall).toBe(Number(r));
    expect(viaBinding.metrics.average.f1).toBe(Number(f1));
  });
});

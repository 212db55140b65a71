import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // Every test shells out to the prolex executable, often dozens of times,
    // so the per-test budget is far above the vitest default.
    testTimeout: 120_000,
    hookTimeout: 120_000,
    // The temp-hygiene tests scan the system temp directory for this
    // package's prefix; running test files serially keeps those scans
    // free of interference from the other file's sessions.
    fileParallelism: false,
  },
});

// Estimator-style wrapper around the riskboost command line.
//
// The binding only marshals data: it writes CSV files, invokes the CLI
// (train / predict / print), and parses the results back. All numerics stay
// in the core library, so outputs are bit-identical to driving the CLI by
// hand on the same inputs.

import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export type Objective = "squared_error" | "logistic" | "survival";

export type Outcome =
  | { kind: "continuous"; values: number[] }
  | { kind: "binary"; labels: number[] }
  | { kind: "survival"; times: number[]; events: number[] };

export interface BoosterOptions {
  objective: Objective;
  /** boosting iterations (default 500) */
  n_iter?: number;
  /** learning rate in (0, 1] (default 0.05) */
  lr?: number;
  /** quantile bins per feature (default 4) */
  n_quantiles?: number;
  /** row fraction resampled per iteration (default 1.0) */
  subsample?: number;
  /** random seed (default 0) */
  seed?: number;
  /** riskboost executable; defaults to $RISKBOOST_BIN or "riskboost" */
  cli?: string;
}

const OUTCOME_KIND: Record<Objective, Outcome["kind"]> = {
  squared_error: "continuous",
  logistic: "binary",
  survival: "survival",
};

// internal column names for outcome values written into the training CSV
const TARGET_COL = "__outcome__";
const TIME_COL = "__time__";
const EVENT_COL = "__event__";

function csvNumber(value: number): string {
  if (!Number.isFinite(value)) {
    throw new Error(`non-finite value ${value} cannot be written to CSV`);
  }
  return String(value); // shortest round-trip representation
}

function toCsv(header: string[], columns: number[][]): string {
  const n = columns[0].length;
  const lines = [header.join(",")];
  for (let i = 0; i < n; i++) {
    lines.push(columns.map((col) => csvNumber(col[i])).join(","));
  }
  return lines.join("\n") + "\n";
}

function outcomeLength(outcome: Outcome): number {
  switch (outcome.kind) {
    case "continuous":
      return outcome.values.length;
    case "binary":
      return outcome.labels.length;
    case "survival":
      return outcome.times.length;
  }
}

export class RiskScoreBooster {
  readonly options: Required<Omit<BoosterOptions, "cli">>;
  private readonly cli: string;
  private workDir: string | null = null;
  private modelPath: string | null = null;
  private featureNames: string[] | null = null;

  constructor(options: BoosterOptions) {
    this.options = {
      objective: options.objective,
      n_iter: options.n_iter ?? 500,
      lr: options.lr ?? 0.05,
      n_quantiles: options.n_quantiles ?? 4,
      subsample: options.subsample ?? 1.0,
      seed: options.seed ?? 0,
    };
    this.cli = options.cli ?? process.env.RISKBOOST_BIN ?? "riskboost";
    if (!(this.options.objective in OUTCOME_KIND)) {
      throw new Error(`unknown objective ${String(this.options.objective)}`);
    }
  }

  get fitted(): boolean {
    return this.modelPath !== null;
  }

  private run(args: string[]): string {
    try {
      return execFileSync(this.cli, args, { encoding: "utf-8" });
    } catch (error) {
      const err = error as { stderr?: string; message?: string };
      const diagnostic = (err.stderr ?? "").trim();
      throw new Error(diagnostic || `riskboost failed: ${err.message ?? String(error)}`);
    }
  }

  private requireFitted(): { modelPath: string; featureNames: string[] } {
    if (this.modelPath === null || this.featureNames === null) {
      throw new Error("model is not fitted; call fit() first");
    }
    return { modelPath: this.modelPath, featureNames: this.featureNames };
  }

  private checkMatrix(features: number[][], featureNames: string[]): void {
    if (featureNames.length === 0) {
      throw new Error("at least one feature column is required");
    }
    if (new Set(featureNames).size !== featureNames.length) {
      throw new Error("feature names must be unique");
    }
    for (const name of featureNames) {
      if ([TARGET_COL, TIME_COL, EVENT_COL].includes(name) || name.includes(",")) {
        throw new Error(`feature name ${name} is reserved or not CSV-safe`);
      }
    }
    for (const row of features) {
      if (row.length !== featureNames.length) {
        throw new Error(
          `row with ${row.length} values does not match ${featureNames.length} feature names`,
        );
      }
    }
  }

  /** Train on a numeric table; the outcome kind must match the objective. */
  fit(features: number[][], featureNames: string[], outcome: Outcome): this {
    this.checkMatrix(features, featureNames);
    if (outcome.kind !== OUTCOME_KIND[this.options.objective]) {
      throw new Error(
        `objective ${this.options.objective} expects a ${OUTCOME_KIND[this.options.objective]} outcome, got ${outcome.kind}`,
      );
    }
    if (outcomeLength(outcome) !== features.length) {
      throw new Error(
        `outcome length ${outcomeLength(outcome)} does not match ${features.length} rows`,
      );
    }
    if (outcome.kind === "survival" && outcome.events.length !== outcome.times.length) {
      throw new Error("survival times and events differ in length");
    }

    const header = [...featureNames];
    const columns = featureNames.map((_, j) => features.map((row) => row[j]));
    const schemaFlags: string[] = [];
    if (outcome.kind === "continuous") {
      header.push(TARGET_COL);
      columns.push(outcome.values);
      schemaFlags.push("--target", TARGET_COL);
    } else if (outcome.kind === "binary") {
      header.push(TARGET_COL);
      columns.push(outcome.labels);
      schemaFlags.push("--target", TARGET_COL);
    } else {
      header.push(TIME_COL, EVENT_COL);
      columns.push(outcome.times, outcome.events);
      schemaFlags.push("--time", TIME_COL, "--event", EVENT_COL);
    }

    this.dispose();
    this.workDir = mkdtempSync(join(tmpdir(), "riskboost-"));
    const trainCsv = join(this.workDir, "train.csv");
    writeFileSync(trainCsv, toCsv(header, columns), "utf-8");
    const modelPath = join(this.workDir, "model.json");
    this.run([
      "train",
      "--data", trainCsv,
      "--objective", this.options.objective,
      ...schemaFlags,
      "--n-iter", String(this.options.n_iter),
      "--lr", String(this.options.lr),
      "--n-quantiles", String(this.options.n_quantiles),
      "--subsample", String(this.options.subsample),
      "--seed", String(this.options.seed),
      "--out", modelPath,
    ]);
    this.modelPath = modelPath;
    this.featureNames = [...featureNames];
    return this;
  }

  /** Raw scores for a feature table (same columns as fit). */
  predict(features: number[][]): number[] {
    const { modelPath, featureNames } = this.requireFitted();
    this.checkMatrix(features, featureNames);
    const dir = this.workDir as string;
    const dataCsv = join(dir, "predict.csv");
    const columns = featureNames.map((_, j) => features.map((row) => row[j]));
    writeFileSync(dataCsv, toCsv(featureNames, columns), "utf-8");
    const outCsv = join(dir, "predictions.csv");
    this.run(["predict", "--model", modelPath, "--data", dataCsv, "--out", outCsv]);
    const text = readFileSync(outCsv, "utf-8");
    const lines = text.trim().split("\n");
    return lines.slice(1).map((line) => Number(line.split(",")[0]));
  }

  /** The rendered score table, exactly as the CLI prints it. */
  print(decimals = 1): string {
    const { modelPath } = this.requireFitted();
    return this.run(["print", "--model", modelPath, "--decimals", String(decimals)]);
  }

  /** Remove temporary files created by fit(). */
  dispose(): void {
    if (this.workDir !== null) {
      rmSync(this.workDir, { recursive: true, force: true });
      this.workDir = null;
      this.modelPath = null;
      this.featureNames = null;
    }
  }
}

/**
 * Machine-readable training configuration shipped with the adapter:
 * per-dataset sequence-length and generation-length constants plus the
 * best hyperparameters found for every model variant. Training loops are
 * out of scope; this is reference data for users wiring their own.
 */

import { readFile } from "node:fs/promises";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

export type Dataset = "cadec" | "smm4h";

export interface Hyperparams {
  readonly lr: number;
  readonly dropout: number;
  readonly epochs: number;
  readonly batchSize: number;
}

export interface TrainingConfig {
  readonly sequenceLength: Record<Dataset, number>;
  readonly maxGenerationTokens: Record<Dataset, number>;
  readonly best: Map<string, Record<Dataset, Hyperparams>>;
}

// one level up from both src/ (tests) and dist/ (build output)
const DATA_PATH = join(
  dirname(fileURLToPath(import.meta.url)),
  "..",
  "data",
  "hyperparams.json",
);

function asHyperparams(raw: any): Hyperparams {
  return {
    lr: Number(raw.lr),
    dropout: Number(raw.dropout),
    epochs: Number(raw.epochs),
    batchSize: Number(raw.batch_size),
  };
}

export async function loadTrainingConfig(
  path: string = DATA_PATH,
): Promise<TrainingConfig> {
  const payload = JSON.parse(await readFile(path, "utf-8"));
  const best = new Map<string, Record<Dataset, Hyperparams>>();
  for (const [model, perDataset] of Object.entries<any>(payload.best_hyperparameters)) {
    best.set(model, {
      cadec: asHyperparams(perDataset.cadec),
      smm4h: asHyperparams(perDataset.smm4h),
    });
  }
  return {
    sequenceLength: payload.sequence_length,
    maxGenerationTokens: payload.max_generation_tokens,
    best,
  };
}

/**
 * Token-classification head: a linear projection of per-token encoder
 * embeddings to BIO label probabilities.
 *
 * The encoder itself is pluggable and external; this module only needs its
 * output matrix (n tokens x hidden width). The head applies W^T h_i + b
 * per token, a numerically stable softmax, and an argmax with ties broken
 * toward the lowest label index.
 */

export type BioLabel = "B" | "I" | "O";

/** Index-aligned with the three output logits. */
export const LABEL_ORDER: readonly BioLabel[] = ["B", "I", "O"];

export interface TokenEmbeddings {
  /** Shape (n tokens x hidden width); every entry finite. */
  readonly rows: ReadonlyArray<ReadonlyArray<number>>;
}

export interface HeadParams {
  /** Shape (hidden width x 3). */
  readonly weights: ReadonlyArray<ReadonlyArray<number>>;
  /** Length 3. */
  readonly bias: ReadonlyArray<number>;
}

export interface TokenClassification {
  readonly labels: BioLabel[];
  /** One probability row per token, each summing to 1. */
  readonly probabilities: number[][];
}

export function softmax(logits: ReadonlyArray<number>): number[] {
  const max = Math.max(...logits);
  const exps = logits.map((v) => Math.exp(v - max));
  const total = exps.reduce((acc, v) => acc + v, 0);
  return exps.map((v) => v / total);
}

export function argmax(values: ReadonlyArray<number>): number {
  let best = 0;
  for (let i = 1; i < values.length; i++) {
    if (values[i] > values[best]) {
      best = i;
    }
  }
  return best;
}

function checkShapes(embeddings: TokenEmbeddings, params: HeadParams): void {
  const width = params.weights.length;
  if (width === 0) {
    throw new Error("head weights must be non-empty");
  }
  for (const row of params.weights) {
    if (row.length !== LABEL_ORDER.length) {
      throw new Error(
        `head weights must be (hidden x ${LABEL_ORDER.length}), got row of ${row.length}`,
      );
    }
  }
  if (params.bias.length !== LABEL_ORDER.length) {
    throw new Error(`bias must have length ${LABEL_ORDER.length}`);
  }
  embeddings.rows.forEach((row, i) => {
    if (row.length !== width) {
      throw new Error(
        `embedding row ${i} has width ${row.length}, head expects ${width}`,
      );
    }
    if (!row.every(Number.isFinite)) {
      throw new Error(`embedding row ${i} contains non-finite values`);
    }
  });
}

/** Project each token embedding to logits: w[:, k] . h + b[k]. */
export function tokenLogits(
  embeddings: TokenEmbeddings,
  params: HeadParams,
): number[][] {
  checkShapes(embeddings, params);
  return embeddings.rows.map((row) =>
    LABEL_ORDER.map((_, k) => {
      let sum = params.bias[k];
      for (let j = 0; j < row.length; j++) {
        sum += params.weights[j][k] * row[j];
      }
      return sum;
    }),
  );
}

/** Per-token BIO classification; empty input yields empty output. */
export function classifyTokens(
  embeddings: TokenEmbeddings,
  params: HeadParams,
): TokenClassification {
  const probabilities = tokenLogits(embeddings, params).map(softmax);
  const labels = probabilities.map((row) => LABEL_ORDER[argmax(row)]);
  return { labels, probabilities };
}

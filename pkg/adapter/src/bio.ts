/**
 * BIO label sequences to character spans, runner-side.
 *
 * Matches the scorer's contract: each maximal B(I)* run becomes one span
 * from the first token's start to the last token's end; an I at the start
 * of the sequence or straight after O is repaired to B.
 */

import type { BioLabel } from "./head.js";

export interface Token {
  readonly text: string;
  readonly start: number;
  readonly end: number;
}

export interface Span {
  readonly start: number;
  readonly end: number;
}

export function bioToSpans(
  tokens: ReadonlyArray<Token>,
  labels: ReadonlyArray<BioLabel>,
): Span[] {
  if (tokens.length !== labels.length) {
    throw new Error(`${tokens.length} tokens vs ${labels.length} labels`);
  }
  const spans: Span[] = [];
  let run: { start: number; end: number } | null = null;
  let previous: BioLabel = "O";
  for (let i = 0; i < tokens.length; i++) {
    let label = labels[i];
    if (label === "I" && previous === "O") {
      label = "B";
    }
    if (label === "B") {
      if (run) spans.push(run);
      run = { start: tokens[i].start, end: tokens[i].end };
    } else if (label === "I") {
      // run is always open here thanks to the repair above
      run!.end = tokens[i].end;
    } else if (run) {
      spans.push(run);
      run = null;
    }
    previous = label;
  }
  if (run) spans.push(run);
  return spans;
}

/** Whitespace-delimited alphanumeric-run tokenizer with exact offsets. */
export function simpleTokenize(text: string): Token[] {
  const tokens: Token[] = [];
  const pattern = /[\p{L}\p{N}]+|[^\s]/gu;
  for (const match of text.matchAll(pattern)) {
    tokens.push({
      text: match[0],
      start: match.index!,
      end: match.index! + match[0].length,
    });
  }
  return tokens;
}

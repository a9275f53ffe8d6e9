import { describe, expect, it } from "vitest";

import { bioToSpans, simpleTokenize } from "../src/bio.js";

describe("simpleTokenize", () => {
  it("emits alphanumeric runs and single punctuation marks", () => {
    const tokens = simpleTokenize("zombified me...");
    expect(tokens.map((t) => t.text)).toEqual(["zombified", "me", ".", ".", "."]);
    for (const token of tokens) {
      expect("zombified me...".slice(token.start, token.end)).toBe(token.text);
    }
  });

  it("handles empty input", () => {
    expect(simpleTokenize("")).toEqual([]);
  });
});

describe("bioToSpans", () => {
  const tokens = simpleTokenize("felt intense nausea");

  it("merges a B I run into one span", () => {
    expect(bioToSpans(tokens, ["O", "B", "I"])).toEqual([{ start: 5, end: 19 }]);
  });

  it("returns nothing for all-O", () => {
    expect(bioToSpans(tokens, ["O", "O", "O"])).toEqual([]);
  });

  it("repairs an orphan I to B", () => {
    expect(bioToSpans(tokens, ["I", "O", "O"])).toEqual([{ start: 0, end: 4 }]);
    expect(bioToSpans(tokens, ["O", "O", "I"])).toEqual([{ start: 13, end: 19 }]);
  });

  it("keeps adjacent B runs separate", () => {
    expect(bioToSpans(tokens, ["B", "B", "I"])).toEqual([
      { start: 0, end: 4 },
      { start: 5, end: 19 },
    ]);
  });

  it("rejects label/token length mismatch", () => {
    expect(() => bioToSpans(tokens, ["O"])).toThrow(/tokens/);
  });
});

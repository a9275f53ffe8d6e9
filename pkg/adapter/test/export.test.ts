import { describe, expect, it } from "vitest";

import { simpleTokenize } from "../src/bio.js";
import {
  renderGenerativePredictions,
  renderSpanPredictions,
  spanPredictionsFromLabels,
} from "../src/export.js";

describe("span exports", () => {
  it("all-O labels export an empty span list", () => {
    const tokens = simpleTokenize("nothing to see");
    const [prediction] = spanPredictionsFromLabels([
      { docId: "d1", seed: 0, tokens, labels: ["O", "O", "O"] },
    ]);
    expect(prediction.spans).toEqual([]);
    expect(renderSpanPredictions([prediction])).toBe(
      '{"doc_id":"d1","seed":0,"spans":[]}\n',
    );
  });

  it("a B I run exports one span record", () => {
    const tokens = simpleTokenize("felt intense nausea");
    const [prediction] = spanPredictionsFromLabels([
      { docId: "d2", seed: 3, tokens, labels: ["O", "B", "I"] },
    ]);
    expect(prediction.spans).toEqual([{ start: 5, end: 19 }]);
    const line = JSON.parse(renderSpanPredictions([prediction]).trim());
    expect(line).toEqual({ doc_id: "d2", seed: 3, spans: [[5, 19]] });
  });

  it("rejects duplicate (doc, seed) pairs", () => {
    const tokens = simpleTokenize("x");
    const entries = spanPredictionsFromLabels([
      { docId: "d", seed: 1, tokens, labels: ["O"] },
      { docId: "d", seed: 1, tokens, labels: ["B"] },
    ]);
    expect(() => renderSpanPredictions(entries)).toThrow(/duplicate/);
  });

  it("allows the same doc under different seeds", () => {
    const tokens = simpleTokenize("x");
    const entries = spanPredictionsFromLabels([
      { docId: "d", seed: 1, tokens, labels: ["O"] },
      { docId: "d", seed: 2, tokens, labels: ["B"] },
    ]);
    expect(renderSpanPredictions(entries).trim().split("\n")).toHaveLength(2);
  });
});

describe("generative exports", () => {
  it("passes the decoded string through exactly", () => {
    const raw = "stomach ache;  Strong Headache ;dizzyé \n";
    const rendered = renderGenerativePredictions([
      { docId: "g1", seed: 7, output: raw },
    ]);
    expect(JSON.parse(rendered.trim()).output).toBe(raw);
  });

  it("rejects duplicates", () => {
    expect(() =>
      renderGenerativePredictions([
        { docId: "g", seed: 0, output: "a" },
        { docId: "g", seed: 0, output: "b" },
      ]),
    ).toThrow(/duplicate/);
  });
});

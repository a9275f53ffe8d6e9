"""Map semicolon-separated generative model output back onto source spans.

Text-generation models emit their predictions as free text, so every item
in the decoded list has to be located in the input before entity-level
scoring can happen.  Items that occur verbatim become single spans; items
that do not are greedily decomposed into the longest word runs that occur
contiguously, and words that occur nowhere are discarded.

Matching is done over the token sequence of the source text, which makes
it case-insensitive, collapses whitespace, and respects word boundaries
("ache" never matches inside "headache").
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Span, merge_spans, tokenize


@dataclass(frozen=True)
class GenerationOutput:
    """Raw decoded string and its semicolon-separated, trimmed items."""

    raw: str
    items: tuple[str, ...]

    def __post_init__(self):
        if any(not item for item in self.items):
            raise ValueError("items must not contain empty strings")

    @classmethod
    def from_raw(cls, raw: str) -> "GenerationOutput":
        items = tuple(part.strip() for part in raw.split(";") if part.strip())
        return cls(raw=raw, items=items)


@dataclass
class AlignmentResult:
    spans: list[Span]
    discarded: list[tuple[int, str]]


def _occurrences(haystack: list[str], needle: list[str]) -> list[int]:
    if not needle or len(needle) > len(haystack):
        return []
    return [
        i
        for i in range(len(haystack) - len(needle) + 1)
        if haystack[i : i + len(needle)] == needle
    ]


def align(text: str, output: GenerationOutput) -> AlignmentResult:
    """Align every output item onto character spans of ``text``.

    Per item: a full contiguous occurrence yields one span; otherwise the
    longest matching word-sequence prefix is emitted repeatedly until the
    item is consumed, and unmatched words land in ``discarded``.  Among
    multiple occurrences the leftmost one not covered by an already emitted
    span is chosen, falling back to the leftmost overall.  Never fails.
    """
    source_tokens = tokenize(text)
    source_words = [t.text.casefold() for t in source_tokens]

    spans: list[Span] = []
    discarded: list[tuple[int, str]] = []

    for item_index, item in enumerate(output.items):
        item_tokens = tokenize(item)
        item_words = [t.text.casefold() for t in item_tokens]
        pos = 0
        miss_run: list[str] = []

        def flush_misses():
            if miss_run:
                discarded.append((item_index, " ".join(miss_run)))
                miss_run.clear()

        while pos < len(item_words):
            matched = 0
            starts: list[int] = []
            for k in range(len(item_words) - pos, 0, -1):
                starts = _occurrences(source_words, item_words[pos : pos + k])
                if starts:
                    matched = k
                    break
            if not matched:
                miss_run.append(item_tokens[pos].text)
                pos += 1
                continue
            flush_misses()
            candidates = [
                Span(source_tokens[s].start, source_tokens[s + matched - 1].end)
                for s in starts
            ]
            chosen = next(
                (c for c in candidates if not any(c.overlaps(e) for e in spans)),
                candidates[0],
            )
            spans.append(chosen)
            pos += matched
        flush_misses()

    return AlignmentResult(spans=spans, discarded=discarded)


def dedupe_spans(spans) -> list[Span]:
    """Merge overlapping or duplicate spans into their union, sorted.

    Scoring requires disjoint predictions; alignment output may repeat or
    overlap when items share source words.
    """
    return merge_spans((s.start, s.end) for s in spans)

"""Corpus ingestion and span/label bookkeeping for ADE-annotated documents.

Documents arrive with character-level entity annotations that may be
overlapping or discontinuous (multi-fragment).  This module parses the
standoff format, normalizes mentions to disjoint spans, converts between
spans and token-level BIO labels, and produces stratified corpus splits.
"""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

log = logging.getLogger(__name__)

ADE_LABEL = "ADE"


class StandoffParseError(ValueError):
    """Malformed standoff record. Carries the 1-based line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class OffsetRangeError(StandoffParseError):
    """Standoff offsets fall outside the document text."""


@dataclass(frozen=True, order=True)
class Span:
    """Half-open character interval [start, end)."""

    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError(f"invalid span ({self.start}, {self.end})")

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end

    def overlap_chars(self, other: "Span") -> int:
        return max(0, min(self.end, other.end) - max(self.start, other.start))


@dataclass(frozen=True)
class Mention:
    """Entity mention as a non-empty tuple of character fragments.

    A mention with two or more fragments is discontinuous.  Fragments must
    be sorted by start and pairwise non-overlapping within the mention.
    """

    fragments: tuple[tuple[int, int], ...]
    label: str = ADE_LABEL

    def __post_init__(self):
        if not self.fragments:
            raise ValueError("mention needs at least one fragment")
        prev_end = -1
        for start, end in self.fragments:
            if not 0 <= start < end:
                raise ValueError(f"invalid fragment ({start}, {end})")
            if start < prev_end:
                raise ValueError("fragments must be sorted and non-overlapping")
            prev_end = end

    @property
    def discontinuous(self) -> bool:
        return len(self.fragments) >= 2

    @property
    def start(self) -> int:
        return self.fragments[0][0]

    @property
    def end(self) -> int:
        return self.fragments[-1][1]


@dataclass
class Document:
    """Source text plus its (possibly overlapping/discontinuous) mentions."""

    id: str
    text: str
    mentions: list[Mention] = field(default_factory=list)

    def __post_init__(self):
        for mention in self.mentions:
            if mention.end > len(self.text):
                raise ValueError(
                    f"doc {self.id}: mention {mention.fragments} exceeds text length"
                )

    @property
    def has_ade(self) -> bool:
        return bool(self.mentions)


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int


# Standoff text-bound record: T<id> TAB <label> <offsets> TAB <surface>.
_STANDOFF_RE = re.compile(r"^(T\S*)\t(\S+) (\d+ \d+(?:;\d+ \d+)*)\t(.*)$")


def import_standoff(
    text: str,
    annotations: str | Iterable[str],
    doc_id: str = "doc",
) -> Document:
    """Parse standoff annotation records against ``text`` into a Document.

    Only text-bound records (id starting with ``T``) are read; other record
    types (notes, attributes, relations) are skipped.  Discontinuous
    mentions use semicolon-separated fragment lists.  Offsets count Unicode
    scalar values, end-exclusive.  Raw mentions are preserved verbatim;
    normalization happens later in :func:`disambiguate`.
    """
    if isinstance(annotations, str):
        lines = annotations.splitlines()
    else:
        lines = list(annotations)

    mentions: list[Mention] = []
    for line_no, line in enumerate(lines, start=1):
        stripped = line.rstrip("\n")
        if not stripped.strip():
            continue
        if not stripped.startswith("T"):
            continue
        match = _STANDOFF_RE.match(stripped)
        if match is None:
            raise StandoffParseError(f"malformed standoff record: {stripped!r}", line_no)
        _, label, offsets, _surface = match.groups()
        fragments = []
        for pair in offsets.split(";"):
            start_s, end_s = pair.split(" ")
            start, end = int(start_s), int(end_s)
            if start >= end:
                raise StandoffParseError(f"empty fragment ({start}, {end})", line_no)
            if end > len(text):
                raise OffsetRangeError(
                    f"offset {end} beyond text length {len(text)}", line_no
                )
            fragments.append((start, end))
        try:
            mentions.append(Mention(tuple(fragments), label=label))
        except ValueError as exc:
            raise StandoffParseError(str(exc), line_no) from exc

    return Document(id=doc_id, text=text, mentions=mentions)


def merge_spans(intervals: Iterable[tuple[int, int]]) -> list[Span]:
    """Union of character intervals: sorted, pairwise disjoint, deduplicated.

    Touching intervals (end == start) are kept separate; only genuine
    overlaps are merged.
    """
    ordered = sorted(intervals)
    merged: list[list[int]] = []
    for start, end in ordered:
        if merged and start < merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], end)
        else:
            merged.append([start, end])
    return [Span(s, e) for s, e in merged]


def disambiguate(mentions: Iterable[Mention]) -> list[Span]:
    """Normalize raw mentions to disjoint spans.

    Discontinuous mentions are split into one span per fragment, then all
    overlapping or identical spans are merged into their union.
    """
    return merge_spans(frag for m in mentions for frag in m.fragments)


# A token is a maximal alphanumeric run; any other non-space character
# stands alone ("#nosleepp" -> "#" + "nosleepp").
_TOKEN_RE = re.compile(r"[^\W_]+|\S", re.UNICODE)


def tokenize(text: str) -> list[Token]:
    return [Token(m.group(), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]


def _check_disjoint_sorted(spans: Sequence[Span], what: str) -> None:
    prev_end = -1
    prev_start = -1
    for span in spans:
        if span.start < prev_start:
            raise ValueError(f"{what} spans must be sorted by start")
        if span.start < prev_end:
            raise ValueError(f"{what} spans must be pairwise disjoint")
        prev_start, prev_end = span.start, span.end


def spans_to_bio(tokens: Sequence[Token], spans: Sequence[Span]) -> list[str]:
    """Label tokens with B/I/O against disjoint, sorted spans.

    A token counts as inside a span if they share at least one character;
    the first such token per span gets B, the following ones I.
    """
    _check_disjoint_sorted(spans, "input")
    labels = ["O"] * len(tokens)
    for span in spans:
        first = True
        for i, tok in enumerate(tokens):
            if tok.end <= span.start:
                continue
            if tok.start >= span.end:
                break
            if labels[i] != "O":
                # Token straddles a span boundary and is already claimed.
                first = False
                continue
            labels[i] = "B" if first else "I"
            first = False
    return labels


def bio_to_spans(
    tokens: Sequence[Token],
    labels: Sequence[str],
    doc_id: str | None = None,
) -> list[Span]:
    """Reconstruct spans from BIO labels over tokens.

    Each maximal B(I)* run becomes one span from the first token's start to
    the last token's end.  An I at sequence start or straight after O is
    repaired to B; repairs are logged so third-party predictions can be
    audited.
    """
    if len(tokens) != len(labels):
        raise ValueError(
            f"{len(tokens)} tokens vs {len(labels)} labels"
        )
    spans: list[Span] = []
    run: list[int] | None = None
    prev = "O"
    repairs = 0
    for tok, label in zip(tokens, labels):
        if label not in ("B", "I", "O"):
            raise ValueError(f"unknown BIO label {label!r}")
        if label == "I" and prev == "O":
            label = "B"
            repairs += 1
        if label == "B":
            if run is not None:
                spans.append(Span(run[0], run[1]))
            run = [tok.start, tok.end]
        elif label == "I":
            assert run is not None
            run[1] = tok.end
        else:
            if run is not None:
                spans.append(Span(run[0], run[1]))
                run = None
        prev = label
    if run is not None:
        spans.append(Span(run[0], run[1]))
    if repairs:
        log.warning(
            "repaired %d orphan I label(s) to B%s",
            repairs,
            f" in doc {doc_id}" if doc_id else "",
        )
    return spans


def _largest_remainder(n: int, ratios: Sequence[float]) -> list[int]:
    exact = [r * n for r in ratios]
    sizes = [int(x) for x in exact]
    shortfall = n - sum(sizes)
    # Distribute leftovers by descending fractional remainder; ties go to
    # the earlier split so results do not depend on float jitter.
    order = sorted(range(len(ratios)), key=lambda i: (-(exact[i] - sizes[i]), i))
    for i in order[:shortfall]:
        sizes[i] += 1
    return sizes


def stratified_split(
    docs: Iterable[Document],
    ratios: tuple[float, float, float],
    seed: int,
) -> tuple[set[str], set[str], set[str]]:
    """Split doc ids into train/val/test, stratified on ADE presence.

    Documents with and without ADEs are split independently by the same
    ratios using largest-remainder rounding (positives carved first), so
    each set keeps the corpus proportion of positive samples.  Deterministic
    for a fixed seed.
    """
    if len(ratios) != 3:
        raise ValueError("ratios must be (train, val, test)")
    if any(r <= 0 for r in ratios):
        raise ValueError("ratios must be positive")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"ratios must sum to 1, got {sum(ratios)}")

    docs = list(docs)
    positives = sorted(d.id for d in docs if d.has_ade)
    negatives = sorted(d.id for d in docs if not d.has_ade)
    rng = random.Random(seed)

    out: tuple[set[str], set[str], set[str]] = (set(), set(), set())
    for stratum in (positives, negatives):
        if len(stratum) < len(ratios):
            raise ValueError(
                f"stratum with {len(stratum)} docs cannot fill {len(ratios)} splits"
            )
        ids = list(stratum)
        rng.shuffle(ids)
        sizes = _largest_remainder(len(ids), ratios)
        offset = 0
        for split_set, size in zip(out, sizes):
            split_set.update(ids[offset : offset + size])
            offset += size
    return out

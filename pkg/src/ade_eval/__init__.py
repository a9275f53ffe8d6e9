"""Evaluation and analysis toolkit for adverse drug event span extraction."""

from .corpus import (
    Document,
    Mention,
    OffsetRangeError,
    Span,
    StandoffParseError,
    Token,
    bio_to_spans,
    disambiguate,
    import_standoff,
    merge_spans,
    spans_to_bio,
    stratified_split,
    tokenize,
)
from .textstats import TextStats, text_stats
from .alignment import AlignmentResult, GenerationOutput, align, dedupe_spans
from .metrics import (
    MatchCounts,
    Scores,
    classify,
    corpus_counts,
    relaxed_scores,
    strict_scores,
)

__version__ = "0.1.0"

"""Entity-level strict and relaxed precision/recall/F1.

Predicted and gold spans are paired one-to-one in two passes: exact span
equality first, then maximal character overlap.  The resulting tally of
correct / partial / incorrect / missing / spurious entities feeds the
standard formulas; the relaxed variant credits partial overlaps with
weight 0.5 while the strict variant counts them as incorrect.

The two-pass greedy pairing is this scorer's frozen definition.  Other
entity scorers may pair differently on pathological many-to-many overlaps;
for the common case (each prediction overlapping at most one gold entity
and vice versa) all reasonable pairings agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import Span, _check_disjoint_sorted


@dataclass(frozen=True)
class MatchCounts:
    cor: int = 0
    par: int = 0
    inc: int = 0
    mis: int = 0
    spu: int = 0

    def __post_init__(self):
        if min(self.cor, self.par, self.inc, self.mis, self.spu) < 0:
            raise ValueError("counts must be non-negative")

    def __add__(self, other: "MatchCounts") -> "MatchCounts":
        return MatchCounts(
            self.cor + other.cor,
            self.par + other.par,
            self.inc + other.inc,
            self.mis + other.mis,
            self.spu + other.spu,
        )


@dataclass(frozen=True)
class Scores:
    precision: float
    recall: float
    f1: float


def classify(gold: Sequence[Span], pred: Sequence[Span]) -> MatchCounts:
    """Tally one document's predictions against its gold spans.

    Pass 1 pairs each prediction with an exactly equal unmatched gold span
    (correct).  Pass 2 walks the remaining predictions in start order and
    pairs each with the unmatched gold of maximal overlap, at least one
    character, earliest gold on ties (partial).  Leftover predictions are
    spurious, leftover golds missing.  Both inputs must be disjoint and
    sorted; normalize with disambiguate/dedupe first.
    """
    _check_disjoint_sorted(gold, "gold")
    _check_disjoint_sorted(pred, "pred")

    gold_taken = [False] * len(gold)
    exact = {(g.start, g.end): i for i, g in enumerate(gold)}

    cor = 0
    partial_preds: list[Span] = []
    for p in pred:
        i = exact.get((p.start, p.end))
        if i is not None and not gold_taken[i]:
            gold_taken[i] = True
            cor += 1
        else:
            partial_preds.append(p)

    par = 0
    spu = 0
    for p in partial_preds:
        best_i = -1
        best_overlap = 0
        for i, g in enumerate(gold):
            if gold_taken[i]:
                continue
            overlap = p.overlap_chars(g)
            if overlap > best_overlap:
                best_overlap = overlap
                best_i = i
        if best_i >= 0:
            gold_taken[best_i] = True
            par += 1
        else:
            spu += 1

    mis = gold_taken.count(False)
    return MatchCounts(cor=cor, par=par, inc=0, mis=mis, spu=spu)


def _scores(numerator: float, c: MatchCounts) -> Scores:
    p_den = c.cor + c.par + c.inc + c.spu
    r_den = c.cor + c.par + c.inc + c.mis
    precision = numerator / p_den if p_den else 0.0
    recall = numerator / r_den if r_den else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return Scores(precision=precision, recall=recall, f1=f1)


def relaxed_scores(c: MatchCounts) -> Scores:
    """Partial overlaps earn half credit; zero denominators score 0."""
    return _scores(c.cor + c.par * 0.5, c)


def strict_scores(c: MatchCounts) -> Scores:
    """Partial overlaps count as incorrect: same denominators, cor on top."""
    reinterpreted = MatchCounts(c.cor, 0, c.inc + c.par, c.mis, c.spu)
    return _scores(float(c.cor), reinterpreted)


def corpus_counts(per_doc: Iterable[MatchCounts]) -> MatchCounts:
    """Micro-aggregation: field-wise sum over documents."""
    total = MatchCounts()
    for counts in per_doc:
        total = total + counts
    return total

"""Per-document text statistics: syllables, words, sentences, difficult words.

Syllable counting is a vowel-group heuristic (no dictionary): count maximal
vowel runs per word, subtract a trailing silent 'e', floor at one syllable.
"Difficult" words are those with more than two syllables that do not appear
in the bundled common-usage word list.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .corpus import Document, Token, disambiguate, tokenize

_VOWELS = frozenset("aeiouy")
_SENTENCE_SPLIT = re.compile(r"[.!?]+")


@dataclass(frozen=True)
class TextStats:
    syllable_count: int
    lexicon_count: int
    sentence_count: int
    character_count: int
    difficult_words: int
    num_ades: int


@lru_cache(maxsize=1)
def common_words() -> frozenset[str]:
    """The bundled common-usage word list (lowercase, one word per line)."""
    data = resources.files("ade_eval.data").joinpath("common_words.txt")
    return frozenset(
        line.strip() for line in data.read_text("utf-8").splitlines() if line.strip()
    )


def count_syllables(word: str) -> int:
    w = word.lower()
    runs = 0
    in_run = False
    for ch in w:
        if ch in _VOWELS:
            if not in_run:
                runs += 1
            in_run = True
        else:
            in_run = False
    if w.endswith("e"):
        runs -= 1
    return max(runs, 1)


def word_tokens(text: str) -> list[Token]:
    """Tokens containing at least one alphanumeric character."""
    return [t for t in tokenize(text) if any(c.isalnum() for c in t.text)]


def sentence_count(text: str) -> int:
    """Segments terminated by runs of ``.!?`` plus any unterminated tail.

    Segments with no alphanumeric content are not counted; non-empty text
    always counts as at least one sentence.
    """
    if not text:
        return 0
    chunks = _SENTENCE_SPLIT.split(text)
    n = sum(1 for chunk in chunks if any(c.isalnum() for c in chunk))
    return max(n, 1)


def text_stats(doc: Document) -> TextStats:
    words = word_tokens(doc.text)
    syllables = [count_syllables(t.text) for t in words]
    common = common_words()
    difficult = sum(
        1
        for tok, syl in zip(words, syllables)
        if syl > 2 and tok.text.lower() not in common
    )
    return TextStats(
        syllable_count=sum(syllables),
        lexicon_count=len(words),
        sentence_count=sentence_count(doc.text),
        character_count=len(doc.text),
        difficult_words=difficult,
        num_ades=len(disambiguate(doc.mentions)),
    )

#!/usr/bin/env python3
"""Regenerate the forum-post style fixture corpus under tests/fixtures/.

Fifty posts are composed from a fixed pool of sentences with hand-verified
reference counts: true dictionary syllable counts, difficult-word counts
(true polysyllabic words absent from the bundled common-word list), word
counts per the alphanumeric-run rule, and one sentence terminator each.
The script writes one .txt/.ann pair per post plus expected_stats.json
holding the aggregate ground truth the test suite checks against.

Deliberately standalone: it does not import the package it is used to test.
"""

import json
import random
import re
from pathlib import Path

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "cadec_like"

# (text, true_syllables, difficult_words, mentions) where each mention is a
# list of surface fragments located inside the sentence (1 fragment =
# contiguous, 2+ = discontinuous).
SENTENCES = [
    ("I started taking this medication two weeks ago.", 14, 1, []),
    ("The pain in my shoulder is gone but now I feel dizzy all the time.", 17, 0, [["dizzy"]]),
    ("My doctor told me to stop because of the terrible headaches.", 16, 0, [["terrible headaches"]]),
    ("It gave me very bad stomach cramps and constant nausea.", 14, 0, [["stomach cramps"], ["nausea"]]),
    ("This drug zombified me and I could not focus at work.", 14, 1, [["zombified"]]),
    ("After the second dose my hands went numb for several hours.", 15, 0, [["hands went numb"]]),
    ("I have gained a lot of weight since starting the treatment.", 13, 0, [["gained a lot of weight"]]),
    ("Would not recommend this to anyone with heart problems.", 14, 1, []),
    ("The rash on my arms cleared up after three days.", 11, 0, [["rash"]]),
    ("Extreme fatigue and muscle pain made it impossible to exercise.", 18, 0, [["Extreme fatigue"], ["muscle pain"]]),
    ("Started on ten milligrams daily for my blood pressure.", 14, 1, []),
    ("I woke up with a pounding headache and blurry vision.", 14, 0, [["pounding headache"], ["blurry vision"]]),
    ("My pharmacist said the insomnia should fade within a month.", 16, 2, [["insomnia"]]),
    ("Felt sick to my stomach every single morning.", 12, 0, [["sick to my stomach"]]),
    ("The dizziness stopped once I lowered the dose.", 11, 1, [["dizziness"]]),
    ("Best decision I ever made for my anxiety.", 14, 1, []),
    ("It made my legs and lower back ache badly at night.", 13, 0, [["legs", "ache"], ["lower back ache"]]),
    ("Honestly this medicine saved my life after years of suffering.", 17, 2, []),
]

WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


def union_sweep(intervals):
    """Independent interval-union oracle for the expected ADE span count."""
    covered = set()
    for start, end in intervals:
        covered.update(range(start, end))
    runs = 0
    prev = None
    for i in sorted(covered):
        if prev is None or i != prev + 1:
            runs += 1
        prev = i
    return runs


def build():
    rng = random.Random(97)
    # The discontinuous-mention sentence is listed twice so that roughly
    # one mention in ten is discontinuous, like the real forum corpus.
    pool = list(range(len(SENTENCES))) + [16]

    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    for old in FIXTURE_DIR.glob("post*.txt"):
        old.unlink()
    for old in FIXTURE_DIR.glob("post*.ann"):
        old.unlink()

    totals = {
        "syllable_count": 0,
        "lexicon_count": 0,
        "sentence_count": 0,
        "character_count": 0,
        "difficult_words": 0,
        "n_mentions": 0,
        "n_discontinuous": 0,
        "num_ades": 0,
    }

    for post_idx in range(50):
        n_sentences = rng.randint(5, 9)
        chosen = [rng.choice(pool) for _ in range(n_sentences)]
        parts = [SENTENCES[i][0] for i in chosen]
        text = " ".join(parts)

        ann_lines = []
        t_counter = 0
        offset = 0
        doc_fragments = []
        for part_idx, sent_idx in enumerate(chosen):
            sentence, true_syll, difficult, mentions = SENTENCES[sent_idx]
            # recount guard against data-entry slips in the table
            assert len(WORD_RE.findall(sentence)) == _LEXICON[sent_idx], sentence
            totals["syllable_count"] += true_syll
            totals["lexicon_count"] += _LEXICON[sent_idx]
            totals["sentence_count"] += 1
            totals["difficult_words"] += difficult
            for fragments in mentions:
                spans = []
                for surface in fragments:
                    local = sentence.find(surface)
                    assert local >= 0, (sentence, surface)
                    spans.append((offset + local, offset + local + len(surface)))
                assert spans == sorted(spans)
                t_counter += 1
                offset_str = ";".join(f"{s} {e}" for s, e in spans)
                surface_str = " ".join(fragments)
                ann_lines.append(f"T{t_counter}\tADE {offset_str}\t{surface_str}")
                doc_fragments.extend(spans)
                totals["n_mentions"] += 1
                if len(fragments) > 1:
                    totals["n_discontinuous"] += 1
            offset += len(sentence) + 1  # joining space

        totals["character_count"] += len(text)
        totals["num_ades"] += union_sweep(doc_fragments)

        stem = FIXTURE_DIR / f"post{post_idx:03d}"
        stem.with_suffix(".txt").write_text(text, encoding="utf-8")
        stem.with_suffix(".ann").write_text(
            "\n".join(ann_lines) + ("\n" if ann_lines else ""), encoding="utf-8"
        )

    expected = {"n_docs": 50, "totals": totals}
    (FIXTURE_DIR / "expected_stats.json").write_text(
        json.dumps(expected, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(f"wrote 50 posts to {FIXTURE_DIR}")
    print(json.dumps(expected, indent=2, sort_keys=True))


# Hand word counts per sentence (alphanumeric runs), index-aligned with SENTENCES.
_LEXICON = [8, 15, 11, 10, 11, 11, 11, 9, 10, 10, 9, 10, 10, 8, 8, 8, 11, 10]


if __name__ == "__main__":
    build()

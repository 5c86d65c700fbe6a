#!/usr/bin/env python3
"""Regenerates data/fixtures/. Deterministic; run from the repo root."""

import csv
import json
import random
import re
from pathlib import Path

OUT = Path("data/fixtures")

# Adjacent-pair gold labels over 359 events.
GOLD_COUNTS = {"BEFORE": 264, "AFTER": 49, "VAGUE": 45}

# dimension -> (correct, samples)
JUDGMENTS = {
    "salient": (148, 195),
    "subject-character": (169, 196),
    "subject-gender": (178, 196),
    "temporal-order": (185, 196),
}


def dump(path, obj):
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def gold_fixture():
    rng = random.Random(20230915)
    labels = [rel for rel, n in GOLD_COUNTS.items() for _ in range(n)]
    rng.shuffle(labels)
    pairs = [{"left": i, "right": i + 1, "relation": rel, "confidence": None}
             for i, rel in enumerate(labels)]
    dump(OUT / "gold_adjacent_pairs.json",
         {"gold": True, "event_count": len(pairs) + 1, "temporal_labels": pairs})
    dump(OUT / "all_before_predictions.json",
         {"temporal_labels": [dict(p, relation="BEFORE") for p in pairs]})


def judgment_fixture():
    rng = random.Random(7)
    with open(OUT / "judgments.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["dimension", "item_id", "correct"])
        for dim, (correct, samples) in JUDGMENTS.items():
            flags = [True] * correct + [False] * (samples - correct)
            rng.shuffle(flags)
            for i, ok in enumerate(flags):
                w.writerow([dim, f"{dim}-{i:03d}", "true" if ok else "false"])


def span(text, needle, nth=0):
    """Character offsets of the nth whole-word occurrence of needle."""
    m = list(re.finditer(r"\b" + re.escape(needle) + r"\b", text))[nth]
    return [m.start(), m.end()]


def bundle_fixture():
    text = "Anna met Tom at the well. She greeted him warmly. Then he left the village.\n"
    (OUT / "mini_story.txt").write_text(text, encoding="utf-8")
    frames = [
        {"trigger": span(text, "left"), "subject": span(text, "he"), "object": span(text, "the village")},
        {"trigger": span(text, "met"), "subject": span(text, "Anna"), "object": span(text, "Tom")},
        {"trigger": span(text, "greeted"), "subject": span(text, "She"), "object": span(text, "him")},
    ]
    mentions = [
        {"span": span(text, "Anna"), "kind": "NAME", "cluster": 0},
        {"span": span(text, "She"), "kind": "PRONOUN", "cluster": 0},
        {"span": span(text, "Tom"), "kind": "NAME", "cluster": 1},
        {"span": span(text, "him"), "kind": "PRONOUN", "cluster": 1},
        {"span": span(text, "he"), "kind": "PRONOUN", "cluster": 1},
    ]
    # Frame ordinals: 1 = met, 2 = greeted, 0 = left.
    labels = [
        {"left": 1, "right": 2, "relation": "BEFORE", "confidence": 0.92},
        {"left": 0, "right": 2, "relation": "AFTER", "confidence": 0.81},
    ]
    dump(OUT / "mini_bundle.json", {"schema_version": 1, "frames": frames, "mentions": mentions,
                                    "temporal_labels": labels, "provenance": "hand-annotated fixture"})


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    gold_fixture()
    judgment_fixture()
    bundle_fixture()

#!/usr/bin/env python3
"""Writes a small synthetic set of word-association norms.

Two loosely coupled vocabularies (concrete-ish and abstract-ish cues) with
Zipf-like response counts, plus the awkward cases a real file contains:
count-1 rows, duplicated rows, self-associations, accented and mixed-case
words. Output is deterministic.
"""
import random
import unicodedata
from pathlib import Path

HERE = Path(__file__).parent
rng = random.Random(20240601)

syll = ["ba", "ce", "di", "fo", "gu", "la", "me", "ni", "po", "ru", "sa", "té", "vo", "zé", "ré", "lu"]


def word(i):
    s = ""
    while True:
        s = syll[i % len(syll)] + s
        i //= len(syll)
        if i == 0:
            return s


concrete = [word(i + 40) for i in range(130)]
abstract = [word(i + 400) for i in range(130)]
extra = [word(i + 900) for i in range(60)]  # response-only words

ratings = {}
for w in concrete:
    ratings[w] = round(rng.uniform(4.2, 6.9), 2)
for w in abstract:
    ratings[w] = round(rng.uniform(1.1, 4.4), 2)
for w in extra[:20]:
    ratings[w] = round(rng.uniform(1.0, 7.0), 2)

rows = []
for pool, other in ((concrete, abstract), (abstract, concrete)):
    for cue in pool:
        k = rng.randint(4, 9)
        responses = set()
        while len(responses) < k:
            r = rng.random()
            if r < 0.75:
                responses.add(rng.choice(pool))
            elif r < 0.85:
                responses.add(rng.choice(other))
            else:
                responses.add(rng.choice(extra))
        responses.discard(cue)
        for rank, resp in enumerate(sorted(responses)):
            count = max(1, int(30 / (rank + 1) * rng.uniform(0.3, 1.0)))
            rows.append((cue, resp, count))
        rows.append((cue, extra[rng.randrange(len(extra))], 1))

# A self-association, a duplicated row and a cue written in upper case with
# a decomposed accent: all must collapse onto the canonical entries.
rows.append((concrete[0], concrete[0], 5))
rows.append(rows[3])
cue, resp, count = rows[10]
rows.append((unicodedata.normalize("NFD", cue.upper()), resp, 2))

rng.shuffle(rows)
with open(HERE / "pairs.tsv", "w", encoding="utf-8") as f:
    f.write("cue\tresponse\tcount\n")
    for c, r, n in rows:
        f.write(f"{c}\t{r}\t{n}\n")
with open(HERE / "ratings.tsv", "w", encoding="utf-8") as f:
    f.write("word\trating\n")
    for w in sorted(ratings):
        f.write(f"{w}\t{ratings[w]}\n")

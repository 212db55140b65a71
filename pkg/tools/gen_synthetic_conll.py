"""Generate the bundled synthetic CoNLL corpus used by the test suite.

Run from the repository root:

    python tools/gen_synthetic_conll.py

Writes tests/data/synthetic/{train,dev,test}.conll plus expected_counts.json.
The expected counts are tallied here, while the corpus is being generated,
from the POS tags this script assigns; they are deliberately independent of
the delexicalization code they later validate.
"""

from __future__ import annotations

import json
import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from prolex.conll import ConllDocument, CorefChain, write_conll  # noqa: E402

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "tests", "data", "synthetic")

SEED = 820817
SPLITS = (("train", 18, 300), ("dev", 6, 100), ("test", 6, 100))

# word pools; tags are assigned here and nowhere else
PRP_NOM = ["he", "she", "they", "I", "you", "we", "it"]
PRP_ACC = ["him", "her", "them", "me", "us", "it", "you"]
PRP_REFL = ["himself", "herself", "themselves", "itself", "myself", "yourself"]
PRP_IND = ["his", "hers", "theirs", "mine", "yours", "ours"]
PRP_DOLLAR = ["his", "her", "their", "my", "your", "its", "our"]
WP_WORDS = ["who", "whom", "what"]
WPS_WORDS = ["whose"]
NAMES = ["Ada", "Bo", "Camille", "Devi", "Emre", "Fen", "Greta", "Hoang", "Ines", "Jun"]
NOUNS = ["dog", "report", "garden", "engine", "letter", "choir", "bridge", "meal", "violin", "map"]
VERBS = ["saw", "praised", "fixed", "wrote", "found", "carried", "painted", "trusted"]
DETS = ["the", "a", "that", "this"]
ADVS = ["quietly", "today", "again", "early"]
SPEAKERS = ["narrator", "speaker_1", "speaker_2", "-"]


class DocBuilder:
    def __init__(self, rng: random.Random, counts: dict[str, int]):
        self.rng = rng
        self.counts = counts
        self.sentences: list[list[tuple[str, str]]] = []
        self.mentions: dict[int, list[tuple[int, int, int]]] = {}
        self.n_entities = rng.randint(2, 4)

    def tag(self, word: str, pos: str) -> tuple[str, str]:
        if pos == "PRP":
            self.counts["PRP"] += 1
        elif pos == "PRP$":
            self.counts["PRP$"] += 1
        return (word, pos)

    def mention(self, entity: int, sent: int, start: int, end: int) -> None:
        self.mentions.setdefault(entity, []).append((sent, start, end))

    def entity(self) -> int:
        return self.rng.randrange(self.n_entities)

    def add_sentence(self) -> None:
        rng = self.rng
        s_idx = len(self.sentences)
        toks: list[tuple[str, str]] = []
        kind = rng.randrange(7)
        if kind == 0:
            # Name V pron_acc .
            ent_a, ent_b = self.entity(), self.entity()
            toks.append(self.tag(rng.choice(NAMES), "NNP"))
            self.mention(ent_a, s_idx, 0, 0)
            toks.append(self.tag(rng.choice(VERBS), "VBD"))
            toks.append(self.tag(rng.choice(PRP_ACC), "PRP"))
            self.mention(ent_b, s_idx, 2, 2)
            toks.append(self.tag(".", "."))
        elif kind == 1:
            # pron_nom V pron_refl adv .
            ent = self.entity()
            toks.append(self.tag(rng.choice(PRP_NOM), "PRP"))
            self.mention(ent, s_idx, 0, 0)
            toks.append(self.tag(rng.choice(VERBS), "VBD"))
            toks.append(self.tag(rng.choice(PRP_REFL), "PRP"))
            self.mention(ent, s_idx, 2, 2)
            toks.append(self.tag(rng.choice(ADVS), "RB"))
            toks.append(self.tag(".", "."))
        elif kind == 2:
            # pron$ noun V det noun .
            ent_a, ent_b = self.entity(), self.entity()
            toks.append(self.tag(rng.choice(PRP_DOLLAR), "PRP$"))
            toks.append(self.tag(rng.choice(NOUNS), "NN"))
            self.mention(ent_a, s_idx, 0, 1)
            toks.append(self.tag(rng.choice(VERBS), "VBD"))
            toks.append(self.tag(rng.choice(DETS), "DT"))
            toks.append(self.tag(rng.choice(NOUNS), "NN"))
            self.mention(ent_b, s_idx, 3, 4)
            toks.append(self.tag(".", "."))
        elif kind == 3:
            # WP V det noun ? (wh words stay untouched by delex)
            toks.append(self.tag(rng.choice(WP_WORDS), "WP"))
            toks.append(self.tag(rng.choice(VERBS), "VBD"))
            toks.append(self.tag(rng.choice(DETS), "DT"))
            toks.append(self.tag(rng.choice(NOUNS), "NN"))
            toks.append(self.tag("?", "."))
        elif kind == 4:
            # WPS noun V pron_nom ? / nested: [Name 's noun] with inner [Name]
            ent_a, ent_b = self.entity(), self.entity()
            toks.append(self.tag(rng.choice(WPS_WORDS), "WP$"))
            toks.append(self.tag(rng.choice(NOUNS), "NN"))
            toks.append(self.tag(rng.choice(VERBS), "VBD"))
            toks.append(self.tag(rng.choice(NAMES), "NNP"))
            self.mention(ent_a, s_idx, 3, 5)
            self.mention(ent_b, s_idx, 3, 3)
            toks.append(self.tag("'s", "POS"))
            toks.append(self.tag(rng.choice(NOUNS), "NN"))
            toks.append(self.tag("?", "."))
        elif kind == 5:
            # Name V that pron_nom V pron_ind .
            ent_a, ent_b = self.entity(), self.entity()
            toks.append(self.tag(rng.choice(NAMES), "NNP"))
            self.mention(ent_a, s_idx, 0, 0)
            toks.append(self.tag(rng.choice(VERBS), "VBD"))
            toks.append(self.tag("that", "IN"))
            toks.append(self.tag(rng.choice(PRP_NOM), "PRP"))
            self.mention(ent_b, s_idx, 3, 3)
            toks.append(self.tag(rng.choice(VERBS), "VBD"))
            toks.append(self.tag(rng.choice(PRP_IND), "PRP"))
            toks.append(self.tag(".", "."))
        else:
            # det noun V pron_acc and pron$ noun .
            ent_a, ent_b = self.entity(), self.entity()
            toks.append(self.tag(rng.choice(DETS), "DT"))
            toks.append(self.tag(rng.choice(NOUNS), "NN"))
            self.mention(ent_a, s_idx, 0, 1)
            toks.append(self.tag(rng.choice(VERBS), "VBD"))
            toks.append(self.tag(rng.choice(PRP_ACC), "PRP"))
            self.mention(ent_b, s_idx, 3, 3)
            toks.append(self.tag("and", "CC"))
            toks.append(self.tag(rng.choice(PRP_DOLLAR), "PRP$"))
            toks.append(self.tag(rng.choice(NOUNS), "NN"))
            self.mention(ent_b, s_idx, 5, 6)
            toks.append(self.tag(".", "."))
        self.sentences.append(toks)

    def chains(self) -> list[CorefChain]:
        out = []
        for ent in sorted(self.mentions):
            mentions = sorted(set(self.mentions[ent]))
            out.append(CorefChain(ent, tuple(mentions)))
        return out


def build_split(name: str, n_docs: int, n_sentences: int, rng: random.Random):
    counts = {"PRP": 0, "PRP$": 0}
    per_doc = [n_sentences // n_docs] * n_docs
    for i in range(n_sentences - sum(per_doc)):
        per_doc[i] += 1
    docs = []
    for d in range(n_docs):
        builder = DocBuilder(rng, counts)
        for _ in range(per_doc[d]):
            builder.add_sentence()
        # every third doc gets a second part to exercise multi-part ids
        if d % 3 == 2 and per_doc[d] >= 4:
            half = per_doc[d] // 2
            first, second = builder.sentences[:half], builder.sentences[half:]
            chains = builder.chains()

            def clip(sents, lo, hi, shift):
                out = []
                for ch in chains:
                    kept = tuple(
                        (s - shift, a, b) for s, a, b in ch.mentions if lo <= s < hi
                    )
                    if kept:
                        out.append(CorefChain(ch.chain_id, kept))
                return out

            doc_id = f"synth/{name}/{d:02d}"
            docs.append(
                ConllDocument.build(doc_id, 0, first, clip(first, 0, half, 0),
                                    speaker=rng.choice(SPEAKERS))
            )
            docs.append(
                ConllDocument.build(doc_id, 1, second,
                                    clip(second, half, per_doc[d], half),
                                    speaker=rng.choice(SPEAKERS))
            )
        else:
            docs.append(
                ConllDocument.build(
                    f"synth/{name}/{d:02d}", 0, builder.sentences, builder.chains(),
                    speaker=rng.choice(SPEAKERS),
                )
            )
    total_sents = sum(len(d.sentences) for d in docs)
    assert total_sents == n_sentences, (name, total_sents)
    return docs, counts


def main() -> None:
    rng = random.Random(SEED)
    os.makedirs(OUT_DIR, exist_ok=True)
    expected: dict[str, dict[str, int]] = {}
    grand = {"PRP": 0, "PRP$": 0}
    total_sentences = 0
    for name, n_docs, n_sents in SPLITS:
        docs, counts = build_split(name, n_docs, n_sents, rng)
        payload = write_conll(docs)
        with open(os.path.join(OUT_DIR, f"{name}.conll"), "wb") as fh:
            fh.write(payload)
        expected[name] = counts
        grand["PRP"] += counts["PRP"]
        grand["PRP$"] += counts["PRP$"]
        total_sentences += n_sents
    expected["total"] = grand
    expected["meta"] = {"sentences": total_sentences, "seed": SEED}  # type: ignore[assignment]
    with open(os.path.join(OUT_DIR, "expected_counts.json"), "w", encoding="utf-8") as fh:
        json.dump(expected, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print("wrote", OUT_DIR)
    print(json.dumps(expected, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()

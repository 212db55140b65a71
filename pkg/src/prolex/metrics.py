"""Coreference clustering metrics: MUC, B-cubed, CEAF (phi4), and their mean.

All three metrics are computed from first principles over
:class:`Clustering` objects (disjoint chains of hashable mention ids).
Conventions, applied consistently:

* a zero denominator yields a 0.0 component, and F1(0, 0) is 0.0;
* B-cubed treats a mention that is missing from the other clustering as
  belonging to an implicit singleton on that side;
* corpus-level scores micro-aggregate by summing numerators and denominators
  across documents before dividing.

The CEAF chain alignment is an optimal one-to-one assignment, delegated to
``scipy.optimize.linear_sum_assignment``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .conll import ConllDocument
from .errors import DocumentMismatchError

__all__ = [
    "Clustering",
    "ScoreTriple",
    "ScoreReport",
    "muc_score",
    "b_cubed",
    "ceaf_phi4",
    "conll_average",
    "phi4",
    "align_mentions",
    "score_pairs",
    "score_documents",
    "format_score_table",
    "score_report_csv",
    "METRIC_ORDER",
]

Mention = Hashable


class Clustering:
    """A set of pairwise-disjoint, non-empty chains of mention ids."""

    def __init__(self, chains: Iterable[Iterable[Mention]]):
        self.chains: tuple[frozenset[Mention], ...] = tuple(frozenset(c) for c in chains)
        total = 0
        for chain in self.chains:
            if not chain:
                raise ValueError("empty chain in clustering")
            total += len(chain)
        self._mention_to_chain: dict[Mention, int] = {}
        for idx, chain in enumerate(self.chains):
            for m in chain:
                if m in self._mention_to_chain:
                    raise ValueError(f"mention {m!r} appears in more than one chain")
                self._mention_to_chain[m] = idx
        self.n_mentions = total

    def chain_of(self, mention: Mention) -> frozenset[Mention] | None:
        idx = self._mention_to_chain.get(mention)
        return None if idx is None else self.chains[idx]

    def chain_index(self, mention: Mention) -> int | None:
        return self._mention_to_chain.get(mention)

    def __len__(self) -> int:
        return len(self.chains)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Clustering):
            return NotImplemented
        return sorted(self.chains, key=sorted_key) == sorted(other.chains, key=sorted_key)


def sorted_key(chain: frozenset) -> tuple:
    return tuple(sorted(map(repr, chain)))


def _safe_div(num: float, den: float) -> float:
    return num / den if den > 0 else 0.0


@dataclass(frozen=True)
class ScoreTriple:
    """Precision, recall, F1.  Construct via ``from_pr`` unless reproducing
    already-rounded published numbers."""

    precision: float
    recall: float
    f1: float

    @classmethod
    def from_pr(cls, precision: float, recall: float) -> "ScoreTriple":
        s = precision + recall
        return cls(precision, recall, 2.0 * precision * recall / s if s > 0 else 0.0)


@dataclass(frozen=True)
class _Counts:
    """Micro-aggregable numerators/denominators of one metric."""

    p_num: float = 0.0
    p_den: float = 0.0
    r_num: float = 0.0
    r_den: float = 0.0

    def __add__(self, other: "_Counts") -> "_Counts":
        return _Counts(
            self.p_num + other.p_num,
            self.p_den + other.p_den,
            self.r_num + other.r_num,
            self.r_den + other.r_den,
        )

    def triple(self) -> ScoreTriple:
        return ScoreTriple.from_pr(_safe_div(self.p_num, self.p_den), _safe_div(self.r_num, self.r_den))


# -- MUC ----------------------------------------------------------------------


def _muc_one_way(chains: Sequence[frozenset], other: Clustering) -> tuple[float, float]:
    """Link-based numerator/denominator of one direction (Vilain counting)."""
    num = 0.0
    den = 0.0
    for chain in chains:
        partitions = set()
        unaligned = 0
        for m in chain:
            idx = other.chain_index(m)
            if idx is None:
                unaligned += 1
            else:
                partitions.add(idx)
        num += len(chain) - (len(partitions) + unaligned)
        den += len(chain) - 1
    return num, den


def _muc_counts(key: Clustering, response: Clustering) -> _Counts:
    r_num, r_den = _muc_one_way(key.chains, response)
    p_num, p_den = _muc_one_way(response.chains, key)
    return _Counts(p_num, p_den, r_num, r_den)


def muc_score(key: Clustering, response: Clustering) -> ScoreTriple:
    """Link-based MUC score of ``response`` against ``key``."""
    return _muc_counts(key, response).triple()


# -- B-cubed ------------------------------------------------------------------


def _b3_one_way(chains: Sequence[frozenset], other: Clustering) -> tuple[float, float]:
    num = 0.0
    den = 0.0
    for chain in chains:
        size = len(chain)
        den += size
        for m in chain:
            other_chain = other.chain_of(m)
            overlap = len(chain & other_chain) if other_chain is not None else 1
            num += overlap / size
    return num, den


def _b3_counts(key: Clustering, response: Clustering) -> _Counts:
    r_num, r_den = _b3_one_way(key.chains, response)
    p_num, p_den = _b3_one_way(response.chains, key)
    return _Counts(p_num, p_den, r_num, r_den)


def b_cubed(key: Clustering, response: Clustering) -> ScoreTriple:
    """Per-mention B-cubed score of ``response`` against ``key``."""
    return _b3_counts(key, response).triple()


# -- CEAF (phi4) ----------------------------------------------------------------


def phi4(a: frozenset, b: frozenset) -> float:
    """Chain similarity 2|A and B| / (|A| + |B|)."""
    return 2.0 * len(a & b) / (len(a) + len(b))


def _ceaf_phi(key: Clustering, response: Clustering) -> float:
    if not key.chains or not response.chains:
        return 0.0
    sims = np.zeros((len(key.chains), len(response.chains)))
    for i, k in enumerate(key.chains):
        for j, r in enumerate(response.chains):
            sims[i, j] = phi4(k, r)
    rows, cols = linear_sum_assignment(sims, maximize=True)
    return float(sims[rows, cols].sum())


def _ceaf_counts(key: Clustering, response: Clustering) -> _Counts:
    phi = _ceaf_phi(key, response)
    return _Counts(phi, float(len(response.chains)), phi, float(len(key.chains)))


def ceaf_phi4(key: Clustering, response: Clustering) -> ScoreTriple:
    """Entity-alignment CEAF score with the phi4 similarity."""
    return _ceaf_counts(key, response).triple()


# -- averaging and corpus scoring ----------------------------------------------


def conll_average(muc: ScoreTriple, b3: ScoreTriple, ceaf: ScoreTriple) -> ScoreTriple:
    """Componentwise arithmetic mean of the three metric triples.

    The F1 component is the mean of the three F1 values, not a harmonic mean
    recomputed from the averaged precision/recall.
    """
    triples = (muc, b3, ceaf)
    return ScoreTriple(
        precision=sum(t.precision for t in triples) / 3.0,
        recall=sum(t.recall for t in triples) / 3.0,
        f1=sum(t.f1 for t in triples) / 3.0,
    )


@dataclass(frozen=True)
class ScoreReport:
    muc: ScoreTriple
    b_cubed: ScoreTriple
    ceaf_phi4: ScoreTriple
    average: ScoreTriple

    @classmethod
    def compute(cls, key: Clustering, response: Clustering) -> "ScoreReport":
        return score_pairs([(key, response)])


def score_pairs(pairs: Iterable[tuple[Clustering, Clustering]]) -> ScoreReport:
    """Micro-aggregated scores over ``(key, response)`` clustering pairs."""
    muc = _Counts()
    b3 = _Counts()
    ceaf = _Counts()
    for key, response in pairs:
        muc = muc + _muc_counts(key, response)
        b3 = b3 + _b3_counts(key, response)
        ceaf = ceaf + _ceaf_counts(key, response)
    muc_t, b3_t, ceaf_t = muc.triple(), b3.triple(), ceaf.triple()
    return ScoreReport(muc_t, b3_t, ceaf_t, conll_average(muc_t, b3_t, ceaf_t))


def align_mentions(
    key_doc: ConllDocument, response_doc: ConllDocument
) -> tuple[Clustering, Clustering]:
    """Build comparable clusterings from two documents over the same tokens.

    Mentions are identified by their exact ``(sentence, start, end)`` span,
    so a span present on only one side simply never matches.  Raises
    :class:`~prolex.errors.DocumentMismatchError` when the token sequences
    differ.
    """
    if key_doc.sentence_lengths() != response_doc.sentence_lengths():
        raise DocumentMismatchError(
            f"documents are not over the same token sequence: "
            f"{key_doc.doc_key} has shape {key_doc.sentence_lengths()}, "
            f"{response_doc.doc_key} has shape {response_doc.sentence_lengths()}"
        )
    key = Clustering(chain.mention_set() for chain in key_doc.chains)
    response = Clustering(chain.mention_set() for chain in response_doc.chains)
    return key, response


def score_documents(
    key_docs: Sequence[ConllDocument], response_docs: Sequence[ConllDocument]
) -> ScoreReport:
    """Score response documents against key documents, matched by doc key."""
    by_key = {doc.doc_key: doc for doc in response_docs}
    if len(by_key) != len(response_docs):
        raise DocumentMismatchError("response contains duplicate document keys")
    missing = [doc.doc_key for doc in key_docs if doc.doc_key not in by_key]
    if missing:
        raise DocumentMismatchError(f"response is missing document(s): {', '.join(missing)}")
    extra = set(by_key) - {doc.doc_key for doc in key_docs}
    if extra:
        raise DocumentMismatchError(f"response has unexpected document(s): {', '.join(sorted(extra))}")
    pairs = [align_mentions(doc, by_key[doc.doc_key]) for doc in key_docs]
    return score_pairs(pairs)


# -- presentation ---------------------------------------------------------------

METRIC_ORDER: tuple[tuple[str, str], ...] = (
    ("muc", "MUC"),
    ("ceaf_phi4", "CEAF_phi4"),
    ("b_cubed", "B3"),
    ("average", "AVG"),
)


def format_score_table(report: ScoreReport) -> str:
    """Aligned text table: metric columns with P/R/F1 sub-columns."""
    width = 8
    header1 = []
    header2 = []
    values = []
    for attr, label in METRIC_ORDER:
        triple: ScoreTriple = getattr(report, attr)
        header1.append(label.ljust(3 * width)[: 3 * width])
        header2.append("".join(h.ljust(width) for h in ("P", "R", "F1")))
        values.append(
            "".join(f"{v:.3f}".ljust(width) for v in (triple.precision, triple.recall, triple.f1))
        )
    lines = [
        "  ".join(header1).rstrip(),
        "  ".join(header2).rstrip(),
        "  ".join(values).rstrip(),
    ]
    return "\n".join(lines) + "\n"


def score_report_csv(report: ScoreReport) -> str:
    """CSV form: one row per metric, ``metric,precision,recall,f1``."""
    lines = ["metric,precision,recall,f1"]
    for attr, label in METRIC_ORDER:
        t: ScoreTriple = getattr(report, attr)
        lines.append(f"{label},{t.precision:.6f},{t.recall:.6f},{t.f1:.6f}")
    return "\n".join(lines) + "\n"

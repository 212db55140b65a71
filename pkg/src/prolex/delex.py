"""Pronoun delexicalization and relexicalization.

Two placeholder vocabularies are supported:

* ``pos`` mode emits the bare tag placeholders ``PRP`` and ``PRP$``.  The
  dependent possessive becomes ``PRP$``; every other case (including the
  independent possessive, which standard tagging lumps under ``PRP``)
  becomes ``PRP``.  This is the vocabulary used when rewriting tagged
  CoNLL documents.
* ``case`` mode emits case-tagged placeholders (``PRP:nom``, ``PRP:acc``,
  ``PRP:refl``, ``PRP:posind``, ``PRP$``) that carry enough information for
  :func:`relexicalize` to reconstruct text for any pronoun profile.

Placeholders carry no casing; matching on alphabetic forms is
case-insensitive.
"""

from __future__ import annotations

import re
import unicodedata
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

from sklearn.base import BaseEstimator, TransformerMixin

from .conll import ConllDocument, ConllToken
from .errors import (
    EmptyProfileError,
    InvalidProfileError,
    MissingPosError,
    PlaceholderCollisionWarning,
    UnresolvedPlaceholderError,
)
from .registry import (
    IndividualProfile,
    Lexicon,
    ProfilePolicy,
    PronounCase,
    PronounCategory,
    PronounSet,
    Registry,
    nfc,
)
from .validation import ensure_text_sequence

__all__ = [
    "DelexMode",
    "DelexReport",
    "delex_document",
    "delex_text",
    "relexicalize",
    "Delexicalizer",
    "Relexicalizer",
    "default_ambiguity_resolver",
    "POS_PLACEHOLDERS",
    "CASE_PLACEHOLDERS",
    "DEFAULT_AVOID_MARKER",
]


class DelexMode(str, Enum):
    POS = "pos"
    CASE = "case"


POS_PLACEHOLDERS: tuple[str, ...] = ("PRP", "PRP$")

_CASE_TO_PLACEHOLDER: dict[PronounCase, str] = {
    PronounCase.NOMINATIVE: "PRP:nom",
    PronounCase.ACCUSATIVE: "PRP:acc",
    PronounCase.REFLEXIVE: "PRP:refl",
    PronounCase.POSSESSIVE_INDEPENDENT: "PRP:posind",
    PronounCase.POSSESSIVE_DEPENDENT: "PRP$",
}
_PLACEHOLDER_TO_CASE = {v: k for k, v in _CASE_TO_PLACEHOLDER.items()}

CASE_PLACEHOLDERS: tuple[str, ...] = (
    "PRP:nom",
    "PRP:acc",
    "PRP:refl",
    "PRP:posind",
    "PRP$",
)

DEFAULT_AVOID_MARKER = "[no-pronoun]"

DEFAULT_SPLIT = "all"

_TOTAL = "total"


def coerce_mode(mode: DelexMode | str) -> DelexMode:
    if isinstance(mode, DelexMode):
        return mode
    try:
        return DelexMode(mode)
    except ValueError:
        raise ValueError(
            f"unknown mode {mode!r} (expected one of: "
            + ", ".join(m.value for m in DelexMode) + ")"
        ) from None


def placeholder_vocabulary(mode: DelexMode | str) -> tuple[str, ...]:
    return POS_PLACEHOLDERS if coerce_mode(mode) == DelexMode.POS else CASE_PLACEHOLDERS


@dataclass
class DelexReport:
    """Replacement counts per placeholder per corpus split.

    Merging is associative and commutative; ``total`` is the sum over all
    placeholders and splits.
    """

    counts: dict[str, dict[str, int]] = field(default_factory=dict)

    def add(self, placeholder: str, split: str = DEFAULT_SPLIT, n: int = 1) -> None:
        by_split = self.counts.setdefault(placeholder, {})
        by_split[split] = by_split.get(split, 0) + n

    def merge(self, other: "DelexReport") -> "DelexReport":
        out = DelexReport()
        for report in (self, other):
            for placeholder, by_split in report.counts.items():
                for split, n in by_split.items():
                    out.add(placeholder, split, n)
        return out

    @classmethod
    def merged(cls, reports: Iterable["DelexReport"]) -> "DelexReport":
        out = cls()
        for report in reports:
            out = out.merge(report)
        return out

    @property
    def total(self) -> int:
        return sum(n for by_split in self.counts.values() for n in by_split.values())

    def splits(self) -> list[str]:
        seen: dict[str, None] = {}
        for by_split in self.counts.values():
            for split in by_split:
                seen.setdefault(split)
        return list(seen)

    def count(self, placeholder: str, split: str | None = None) -> int:
        by_split = self.counts.get(placeholder, {})
        if split is None:
            return sum(by_split.values())
        return by_split.get(split, 0)

    def split_total(self, split: str) -> int:
        return sum(by_split.get(split, 0) for by_split in self.counts.values())

    def to_tsv(
        self,
        splits: Sequence[str] | None = None,
        placeholders: Sequence[str] | None = None,
    ) -> str:
        """Tab-separated count table: placeholder rows, split columns, totals.

        Layout: header ``placeholder <split...> total``, one row per
        placeholder, and a final ``total`` row.
        """
        if splits is None:
            splits = sorted(self.splits())
        if placeholders is None:
            canonical = [p for p in POS_PLACEHOLDERS + CASE_PLACEHOLDERS if p in self.counts]
            extras = sorted(set(self.counts) - set(canonical))
            placeholders = list(dict.fromkeys(canonical + extras))
        lines = ["\t".join(["placeholder", *splits, _TOTAL])]
        for placeholder in placeholders:
            row = [placeholder, *(str(self.count(placeholder, s)) for s in splits)]
            row.append(str(self.count(placeholder)))
            lines.append("\t".join(row))
        total_row = [_TOTAL, *(str(self.split_total(s)) for s in splits), str(self.total)]
        lines.append("\t".join(total_row))
        return "\n".join(lines) + "\n"


# -- document (tag-driven) path ----------------------------------------------


def delex_document(
    doc: ConllDocument,
    mode: DelexMode | str = DelexMode.POS,
    *,
    split: str = DEFAULT_SPLIT,
) -> tuple[ConllDocument, DelexReport]:
    """Replace the form of every PRP/PRP$-tagged token with its placeholder.

    Everything else (other tokens, tags, parse bits, coreference columns) is
    left untouched; chains are carried over as-is.  Raises
    :class:`~prolex.errors.MissingPosError` when the document has no POS
    column.  Only ``pos`` mode is supported here: a bare POS tag cannot say
    which grammatical case a PRP token carries, so case-tagged output is the
    job of :func:`delex_text`.
    """
    mode = coerce_mode(mode)
    if mode != DelexMode.POS:
        raise ValueError(
            "delex_document supports mode='pos' only; case-tagged placeholders "
            "need lexical case information (see delex_text)"
        )
    report = DelexReport()
    new_sentences: list[list[ConllToken]] = []
    changed = False
    for sentence in doc.sentences:
        row: list[ConllToken] = []
        for token in sentence:
            pos = token.pos
            if pos is None:
                raise MissingPosError(
                    f"document {doc.doc_key} has no POS column; cannot delexicalize"
                )
            if pos in POS_PLACEHOLDERS:
                report.add(pos, split)
                row.append(token.with_form(pos))
                changed = True
            else:
                row.append(token)
        new_sentences.append(row)
    out = ConllDocument(
        doc.doc_id,
        doc.part,
        new_sentences,
        list(doc.chains),
        raw_text=None if changed else doc.raw_text,
    )
    return out, report


# -- text (lexicon-driven) path ------------------------------------------------

_WS_SPLIT = re.compile(r"(\s+)")


def _split_affixes(token: str) -> tuple[str, str, str]:
    """Strip leading/trailing punctuation; returns (prefix, core, suffix).

    Only category P* characters are stripped: ``$`` is a symbol and stays,
    which keeps the ``PRP$`` placeholder intact.
    """
    i, j = 0, len(token)
    while i < j and unicodedata.category(token[i]).startswith("P"):
        i += 1
    while j > i and unicodedata.category(token[j - 1]).startswith("P"):
        j -= 1
    return token[:i], token[i:j], token[j:]


AmbiguityResolver = Callable[[list[tuple[str, PronounCase]], str, Lexicon], PronounCase]

_CASE_PRIORITY = (
    PronounCase.NOMINATIVE,
    PronounCase.ACCUSATIVE,
    PronounCase.POSSESSIVE_INDEPENDENT,
    PronounCase.REFLEXIVE,
    PronounCase.POSSESSIVE_DEPENDENT,
)


def default_ambiguity_resolver(
    candidates: list[tuple[str, PronounCase]], next_core: str, lexicon: Lexicon
) -> PronounCase:
    """Pick one case when a surface form is ambiguous.

    Crude noun-phrase heuristic: the dependent possessive wins when the next
    token is alphabetic and unknown to the lexicon (``her book``); otherwise
    the remaining cases are tried in nominative, accusative, independent
    possessive, reflexive order.
    """
    cases = {case for _, case in candidates}
    if PronounCase.POSSESSIVE_DEPENDENT in cases:
        if next_core and next_core.isalpha() and next_core not in lexicon:
            return PronounCase.POSSESSIVE_DEPENDENT
    for case in _CASE_PRIORITY:
        if case in cases:
            return case
    raise ValueError("empty candidate list")  # pragma: no cover - guarded by caller


def _lexicon_of(source: Lexicon | Registry) -> Lexicon:
    return source.lexicon if isinstance(source, Registry) else source


def delex_text(
    text: str,
    lexicon: Lexicon | Registry,
    mode: DelexMode | str = DelexMode.POS,
    *,
    split: str = DEFAULT_SPLIT,
    resolver: AmbiguityResolver | None = None,
) -> tuple[str, DelexReport]:
    """Replace known pronoun forms in plain text with placeholders.

    Whitespace-delimited tokens are matched against the lexicon, whole token
    first, then with leading/trailing punctuation stripped (the punctuation
    is kept around the placeholder).  Tokens that already look like a
    placeholder are left alone and reported via
    :class:`~prolex.errors.PlaceholderCollisionWarning`.
    """
    mode = coerce_mode(mode)
    lexicon = _lexicon_of(lexicon)
    resolver = resolver or default_ambiguity_resolver
    vocabulary = set(placeholder_vocabulary(mode))
    report = DelexReport()

    parts = _WS_SPLIT.split(text)
    tokens = parts[0::2]
    cores = [_split_affixes(tok) if tok else ("", "", "") for tok in tokens]
    next_cores: list[str] = [""] * len(tokens)
    upcoming = ""
    for i in range(len(tokens) - 1, -1, -1):
        next_cores[i] = upcoming
        if tokens[i]:
            upcoming = cores[i][1] or tokens[i]

    collisions = 0
    for i, token in enumerate(tokens):
        if not token:
            continue
        prefix, core, suffix = "", token, ""
        candidates = lexicon.candidates(token)
        if not candidates and cores[i][1] != token:
            prefix, core, suffix = cores[i]
            if core:
                candidates = lexicon.candidates(core)
        if not candidates:
            if core in vocabulary or token in vocabulary:
                collisions += 1
            continue
        case = resolver(candidates, next_cores[i], lexicon)
        if mode == DelexMode.POS:
            placeholder = "PRP$" if case == PronounCase.POSSESSIVE_DEPENDENT else "PRP"
        else:
            placeholder = _CASE_TO_PLACEHOLDER[case]
        report.add(placeholder, split)
        parts[2 * i] = prefix + placeholder + suffix

    if collisions:
        warnings.warn(
            f"{collisions} token(s) in the input already match a placeholder "
            "and were left alone",
            PlaceholderCollisionWarning,
            stacklevel=2,
        )
    return "".join(parts), report


# -- relexicalization ----------------------------------------------------------


def _profile_sets(profile: IndividualProfile, registry: Registry) -> list[PronounSet]:
    return [registry.get(sid) for sid in profile.sets]


def relexicalize(
    text: str,
    profile: IndividualProfile,
    registry: Registry,
    *,
    fallback_set: PronounSet | str | None = None,
    avoid_marker: str = DEFAULT_AVOID_MARKER,
) -> str:
    """Replace case-tagged placeholders with forms chosen by the profile.

    Placeholder slots are numbered in document order; the
    ``equal_alternating`` policy round-robins the profile's sets over those
    slots.  A bare ``PRP`` (or an unknown ``PRP:...`` tag) cannot be resolved
    to a case and raises
    :class:`~prolex.errors.UnresolvedPlaceholderError`.
    """
    validation = registry.validate_profile(profile)
    policy = ProfilePolicy(profile.policy)
    if not validation.ok:
        if not profile.sets and policy in (
            ProfilePolicy.SINGLE,
            ProfilePolicy.EQUAL_ALTERNATING,
        ):
            raise EmptyProfileError(
                f"profile has no pronoun sets but policy {policy.value!r} needs one"
            )
        raise InvalidProfileError(validation.violations)

    sets = _profile_sets(profile, registry)
    fallback: PronounSet | None = None
    if fallback_set is not None:
        fallback = fallback_set if isinstance(fallback_set, PronounSet) else registry.get(fallback_set)
    if policy == ProfilePolicy.MIRRORED and fallback is None:
        raise EmptyProfileError(
            "policy 'mirrored' echoes the conversation partner; pass fallback_set "
            "to relexicalize with it"
        )
    nameself = next((s for s in sets if s.category == PronounCategory.NAMESELF), None)

    def form_for(case: PronounCase, slot: int) -> str:
        if policy == ProfilePolicy.AVOID:
            return avoid_marker
        if policy == ProfilePolicy.NAME_ONLY:
            if nameself is not None:
                return nameself.forms.by_case(case)
            name = nfc((profile.name or "").strip())
            if case in (PronounCase.POSSESSIVE_DEPENDENT, PronounCase.POSSESSIVE_INDEPENDENT):
                return name + "'s"
            return name
        if policy == ProfilePolicy.MIRRORED:
            chosen = fallback
        elif policy == ProfilePolicy.EQUAL_ALTERNATING:
            chosen = sets[slot % len(sets)]
        else:  # single
            chosen = sets[0]
        assert chosen is not None
        return chosen.forms.by_case(case)

    parts = _WS_SPLIT.split(text)
    slot = 0
    for i in range(0, len(parts), 2):
        token = parts[i]
        if not token:
            continue
        prefix, core, suffix = "", token, ""
        case = _PLACEHOLDER_TO_CASE.get(core)
        if case is None:
            prefix, core, suffix = _split_affixes(token)
            case = _PLACEHOLDER_TO_CASE.get(core)
        if case is None:
            if core == "PRP" or core.startswith("PRP:"):
                raise UnresolvedPlaceholderError(
                    f"placeholder {core!r} carries no resolvable case tag; "
                    "relexicalization needs case-tagged input"
                )
            continue
        parts[i] = prefix + form_for(case, slot) + suffix
        slot += 1
    return "".join(parts)


# -- sklearn-style transformers -------------------------------------------------


class Delexicalizer(BaseEstimator, TransformerMixin):
    """Transformer that delexicalizes an iterable of text documents.

    Stateless in the sklearn sense: ``fit`` only validates input.  After
    ``transform``, ``report_`` holds the merged replacement counts of the
    latest call.

    Parameters
    ----------
    mode : str, default "pos"
        Placeholder vocabulary, ``"pos"`` or ``"case"``.
    registry : Registry or None
        Pronoun inventory to match against; ``None`` means the builtin one.
    split : str, default "all"
        Split label used in the report.
    """

    def __init__(
        self,
        mode: str = "pos",
        registry: Registry | None = None,
        split: str = DEFAULT_SPLIT,
    ) -> None:
        self.mode = mode
        self.registry = registry
        self.split = split

    def _registry(self) -> Registry:
        if self.registry is not None:
            return self.registry
        if not hasattr(self, "registry_"):
            self.registry_ = Registry()
        return self.registry_

    def fit(self, X: Iterable[str], y: object = None) -> "Delexicalizer":
        ensure_text_sequence(X)
        coerce_mode(self.mode)
        return self

    def transform(self, X: Iterable[str]) -> list[str]:
        docs = ensure_text_sequence(X)
        registry = self._registry()
        out: list[str] = []
        report = DelexReport()
        for doc in docs:
            text, doc_report = delex_text(doc, registry, self.mode, split=self.split)
            out.append(text)
            report = report.merge(doc_report)
        self.report_ = report
        return out


class Relexicalizer(BaseEstimator, TransformerMixin):
    """Transformer that fills case-tagged placeholders for one profile."""

    def __init__(
        self,
        profile: IndividualProfile | None = None,
        registry: Registry | None = None,
        fallback_set: str | None = None,
        avoid_marker: str = DEFAULT_AVOID_MARKER,
    ) -> None:
        self.profile = profile
        self.registry = registry
        self.fallback_set = fallback_set
        self.avoid_marker = avoid_marker

    def _registry(self) -> Registry:
        if self.registry is not None:
            return self.registry
        if not hasattr(self, "registry_"):
            self.registry_ = Registry()
        return self.registry_

    def fit(self, X: Iterable[str], y: object = None) -> "Relexicalizer":
        ensure_text_sequence(X)
        if self.profile is None:
            raise ValueError("Relexicalizer needs a profile")
        return self

    def transform(self, X: Iterable[str]) -> list[str]:
        if self.profile is None:
            raise ValueError("Relexicalizer needs a profile")
        docs = ensure_text_sequence(X)
        registry = self._registry()
        return [
            relexicalize(
                doc,
                self.profile,
                registry,
                fallback_set=self.fallback_set,
                avoid_marker=self.avoid_marker,
            )
            for doc in docs
        ]

"""Reflexive-suffix pronoun candidate mining over large line corpora.

The miner scans text line by line for tokens that end in a reflexive suffix
(``-self``/``-selves`` by default), normalizes them (NFC + lowercase), and
filters out non-third-person reflexives and stoplisted non-pronoun
expressions.  Counting is a plain associative merge, so a corpus can be
sharded, mined per shard, and merged without changing the result.
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import IO, Iterable, Iterator, Sequence

from sklearn.base import BaseEstimator

from .validation import ensure_line_iterable

__all__ = [
    "MinerConfig",
    "TokenCount",
    "RankTable",
    "mine_stream",
    "merge_counts",
    "rank_frequency",
    "export_rank_csv",
    "export_counts_tsv",
    "load_stoplist",
    "default_stoplist",
    "NeopronounMiner",
    "NON_THIRD_PERSON_REFLEXIVES",
    "STANDARD_THIRD_PERSON_REFLEXIVES",
]

DEFAULT_SUFFIXES: tuple[str, ...] = ("self", "selves")

# First/second-person and plural reflexives: not candidates for the
# third-person singular slots this miner is after.
NON_THIRD_PERSON_REFLEXIVES = frozenset(
    {
        "myself",
        "meself",
        "yourself",
        "yourselves",
        "yaself",
        "yerself",
        "youself",
        "urself",
        "urselves",
        "ourselves",
        "ourself",
        "oneself",
        "thyself",
        "themselves",
        "theirselves",
    }
)

# Standard-English third-person reflexives; kept by default, excludable via
# MinerConfig when only novel candidates are wanted.
STANDARD_THIRD_PERSON_REFLEXIVES = frozenset({"himself", "herself", "itself", "themself"})

_HYPHEN_SPLIT = re.compile(r"[-‐‑]")

# Approximate emoji ranges: kept when stripping symbol characters at token
# edges, so emoji-stem forms such as a unicorn followed by "self" survive.
_EMOJI_RANGES: tuple[tuple[int, int], ...] = (
    (0x1F000, 0x1FAFF),
    (0x2300, 0x23FF),
    (0x2600, 0x27BF),
    (0x2B00, 0x2BFF),
    (0xFE00, 0xFE0F),
    (0x200D, 0x200D),
    (0x20E3, 0x20E3),
)


def _is_emoji_char(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _EMOJI_RANGES)


def _strippable(ch: str) -> bool:
    cat = unicodedata.category(ch)
    if cat.startswith("P"):
        return True
    if cat.startswith("S"):
        return not _is_emoji_char(ch)
    return False


def _strip_edges(token: str) -> str:
    i, j = 0, len(token)
    while i < j and _strippable(token[i]):
        i += 1
    while j > i and _strippable(token[j - 1]):
        j -= 1
    return token[i:j]


def default_stoplist() -> frozenset[str]:
    """The shipped default stoplist (parsed from the bundled file)."""
    text = resources.files("prolex").joinpath("data/default_stoplist.txt").read_text("utf-8")
    return parse_stoplist(text)


def parse_stoplist(text: str) -> frozenset[str]:
    tokens = set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens.add(unicodedata.normalize("NFC", line).lower())
    return frozenset(tokens)


def load_stoplist(path_or_io: str | IO[str]) -> frozenset[str]:
    """Load a stoplist file: one token per line, ``#`` comments."""
    if hasattr(path_or_io, "read"):
        return parse_stoplist(path_or_io.read())
    with open(path_or_io, encoding="utf-8") as fh:
        return parse_stoplist(fh.read())


@dataclass
class MinerConfig:
    """Mining knobs.

    ``min_token_length`` defaults to 5 so the bare token ``self`` (length 4)
    never counts as a candidate.  ``filter_non_third_person`` removes first-
    and second-person (and plural) reflexives even when a custom stoplist
    omits them.  ``exclude_standard_reflexives`` additionally drops
    himself/herself/itself/themself to isolate novel candidates.
    """

    suffixes: tuple[str, ...] = DEFAULT_SUFFIXES
    stoplist: frozenset[str] = field(default_factory=default_stoplist)
    filter_non_third_person: bool = True
    min_token_length: int = 5
    exclude_standard_reflexives: bool = False

    def __post_init__(self) -> None:
        self.suffixes = tuple(unicodedata.normalize("NFC", s).lower() for s in self.suffixes)
        if not self.suffixes:
            raise ValueError("at least one suffix is required")
        self.stoplist = frozenset(
            unicodedata.normalize("NFC", t).lower() for t in self.stoplist
        )


@dataclass(frozen=True)
class TokenCount:
    token: str
    count: int


@dataclass
class MineStats:
    """Bookkeeping from one mining pass."""

    lines_read: int = 0
    lines_skipped: int = 0


def _candidate_tokens(line: str, config: MinerConfig) -> Iterator[str]:
    for piece in line.split():
        normalized = unicodedata.normalize("NFC", piece).lower()
        for part in _HYPHEN_SPLIT.split(normalized):
            token = _strip_edges(part)
            if len(token) < config.min_token_length:
                continue
            if not token.endswith(config.suffixes):
                continue
            if config.filter_non_third_person and token in NON_THIRD_PERSON_REFLEXIVES:
                continue
            if config.exclude_standard_reflexives and token in STANDARD_THIRD_PERSON_REFLEXIVES:
                continue
            if token in config.stoplist:
                continue
            yield token


def _mine_counter(
    lines: Iterable[str | bytes], config: MinerConfig
) -> tuple[Counter[str], MineStats]:
    stats = MineStats()
    counter: Counter[str] = Counter()
    suffixes = config.suffixes
    for raw in lines:
        stats.lines_read += 1
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError:
                stats.lines_skipped += 1
                continue
        elif not isinstance(raw, str):
            stats.lines_skipped += 1
            continue
        # Cheap prefilter: a qualifying token must contain a suffix substring
        # (NFC never composes new ASCII, so checking the lowered raw line is
        # sound).
        lowered = raw.lower()
        if not any(s in lowered for s in suffixes):
            continue
        for token in _candidate_tokens(raw, config):
            counter[token] += 1
    return counter, stats


def _ordered(counter: Counter[str]) -> list[TokenCount]:
    return [
        TokenCount(token, count)
        for token, count in sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))
    ]


def mine_stream(
    lines: Iterable[str | bytes], config: MinerConfig | None = None
) -> list[TokenCount]:
    """Mine a line stream; returns counts ordered by count desc, token asc.

    Lines that fail UTF-8 decoding are skipped (use
    :class:`NeopronounMiner` when you need the skip counter).
    """
    ensure_line_iterable(lines)
    counter, _ = _mine_counter(lines, config or MinerConfig())
    return _ordered(counter)


def merge_counts(parts: Iterable[Sequence[TokenCount]]) -> list[TokenCount]:
    """Merge per-shard results; associative and commutative."""
    merged: Counter[str] = Counter()
    for part in parts:
        for tc in part:
            merged[tc.token] += tc.count
    return _ordered(merged)


@dataclass
class RankTable:
    """Rank-frequency rows ``(occurrence_count, num_tokens_with_that_count)``.

    Counts are strictly decreasing; the sum of ``count * num_tokens`` equals
    the total number of mentions counted.
    """

    rows: list[tuple[int, int]]

    def __post_init__(self) -> None:
        counts = [c for c, _ in self.rows]
        if any(c <= 0 for c in counts) or any(n <= 0 for _, n in self.rows):
            raise ValueError("rank table entries must be positive")
        if any(nxt >= prev for prev, nxt in zip(counts, counts[1:])):
            raise ValueError("rank table counts must be strictly decreasing")

    @property
    def total_mentions(self) -> int:
        return sum(count * n for count, n in self.rows)

    @property
    def total_tokens(self) -> int:
        return sum(n for _, n in self.rows)


def rank_frequency(counts: Sequence[TokenCount]) -> RankTable:
    """Collapse token counts into a rank-frequency table."""
    by_count: Counter[int] = Counter(tc.count for tc in counts)
    rows = sorted(by_count.items(), key=lambda kv: -kv[0])
    return RankTable(rows)


def export_rank_csv(table: RankTable, path_or_io: str | IO[str]) -> None:
    """Write ``count,num_tokens`` CSV (UTF-8, LF)."""
    payload = "count,num_tokens\n" + "".join(f"{c},{n}\n" for c, n in table.rows)
    _write_text(path_or_io, payload)


def export_counts_tsv(counts: Sequence[TokenCount], path_or_io: str | IO[str]) -> None:
    """Write ``token<TAB>count`` rows (UTF-8, LF) in mined order."""
    payload = "token\tcount\n" + "".join(f"{tc.token}\t{tc.count}\n" for tc in counts)
    _write_text(path_or_io, payload)


def _write_text(path_or_io: str | IO[str], payload: str) -> None:
    if hasattr(path_or_io, "write"):
        path_or_io.write(payload)
        return
    with open(path_or_io, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(payload)


class NeopronounMiner(BaseEstimator):
    """Estimator wrapper around :func:`mine_stream`.

    ``fit`` consumes an iterable of lines and exposes ``counts_``,
    ``rank_table_``, ``lines_read_``, and ``lines_skipped_``.
    """

    def __init__(
        self,
        suffixes: tuple[str, ...] = DEFAULT_SUFFIXES,
        stoplist: frozenset[str] | None = None,
        filter_non_third_person: bool = True,
        min_token_length: int = 5,
        exclude_standard_reflexives: bool = False,
    ) -> None:
        self.suffixes = suffixes
        self.stoplist = stoplist
        self.filter_non_third_person = filter_non_third_person
        self.min_token_length = min_token_length
        self.exclude_standard_reflexives = exclude_standard_reflexives

    def _config(self) -> MinerConfig:
        return MinerConfig(
            suffixes=tuple(self.suffixes),
            stoplist=self.stoplist if self.stoplist is not None else default_stoplist(),
            filter_non_third_person=self.filter_non_third_person,
            min_token_length=self.min_token_length,
            exclude_standard_reflexives=self.exclude_standard_reflexives,
        )

    def fit(self, X: Iterable[str | bytes], y: object = None) -> "NeopronounMiner":
        ensure_line_iterable(X)
        counter, stats = _mine_counter(X, self._config())
        self.counts_ = _ordered(counter)
        self.rank_table_ = rank_frequency(self.counts_)
        self.lines_read_ = stats.lines_read
        self.lines_skipped_ = stats.lines_skipped
        return self

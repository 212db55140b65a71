"""CoNLL-2012 coreference file parsing and writing.

The parser keeps every document's original byte span, so writing an
untouched document back out is byte-identical to the input.  Edited
documents (token forms replaced) are re-rendered by splicing the new column
text into the original line, which preserves the surrounding column spacing.

Column layout defaults to the assembled OntoNotes shape: document id, part
number, word number, word form, POS, parse bit, further columns, and the
coreference column last.  The form/POS column indices are configurable for
other dialects.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .errors import (
    BadEncodingError,
    InvalidSpanError,
    MalformedLineError,
    UnbalancedBracketsError,
)

__all__ = [
    "ConllToken",
    "CorefChain",
    "ConllDocument",
    "Mention",
    "parse_conll",
    "iter_conll_documents",
    "write_conll",
    "render_document",
    "coref_cells",
    "DEFAULT_FORM_COL",
    "DEFAULT_POS_COL",
]

DEFAULT_FORM_COL = 3
DEFAULT_POS_COL = 4

# A mention is (sentence index, start token, end token), ends inclusive.
Mention = tuple[int, int, int]

_TOKEN_RE = re.compile(r"\S+")
_BEGIN_RE = re.compile(r"^#begin document \((.*)\); part (\d+)\s*$")
_END_RE = re.compile(r"^#end document\s*$")
_COREF_ITEM_RE = re.compile(r"^(\()?(\d+)(\))?$")


class ConllToken:
    """One token line; the raw line is kept so edits are surgical."""

    __slots__ = ("raw", "eol", "_spans", "form_col", "pos_col")

    def __init__(
        self,
        raw: str,
        spans: list[tuple[int, int]],
        form_col: int = DEFAULT_FORM_COL,
        pos_col: int | None = DEFAULT_POS_COL,
        eol: str = "\n",
    ) -> None:
        self.raw = raw
        self._spans = spans
        self.form_col = form_col
        self.pos_col = pos_col
        self.eol = eol

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_line(
        cls,
        content: str,
        form_col: int = DEFAULT_FORM_COL,
        pos_col: int | None = DEFAULT_POS_COL,
        eol: str = "\n",
    ) -> "ConllToken":
        spans = [m.span() for m in _TOKEN_RE.finditer(content)]
        return cls(content, spans, form_col, pos_col, eol)

    @classmethod
    def from_columns(
        cls,
        columns: Iterable[str],
        form_col: int = DEFAULT_FORM_COL,
        pos_col: int | None = DEFAULT_POS_COL,
    ) -> "ConllToken":
        cols = list(columns)
        for col in cols:
            if not col or any(ch.isspace() for ch in col):
                raise MalformedLineError(f"column value {col!r} is empty or contains whitespace")
        content = " ".join(cols)
        return cls.from_line(content, form_col, pos_col)

    # -- accessors ----------------------------------------------------------

    @property
    def ncols(self) -> int:
        return len(self._spans)

    def column(self, index: int) -> str:
        s, e = self._spans[index]
        return self.raw[s:e]

    @property
    def raw_columns(self) -> list[str]:
        return [self.raw[s:e] for s, e in self._spans]

    @property
    def form(self) -> str:
        return self.column(self.form_col)

    @property
    def pos(self) -> str | None:
        if self.pos_col is None:
            return None
        return self.column(self.pos_col)

    @property
    def coref(self) -> str:
        return self.column(self.ncols - 1)

    def with_form(self, new_form: str) -> "ConllToken":
        """A copy with the form column replaced (spacing preserved)."""
        if not new_form or any(ch.isspace() for ch in new_form):
            raise MalformedLineError(f"replacement form {new_form!r} is empty or has whitespace")
        s, e = self._spans[self.form_col]
        delta = len(new_form) - (e - s)
        raw = self.raw[:s] + new_form + self.raw[e:]
        spans = [
            (a, b) if b <= s else ((a + delta, b + delta) if a >= e else (s, s + len(new_form)))
            for a, b in self._spans
        ]
        return ConllToken(raw, spans, self.form_col, self.pos_col, self.eol)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConllToken):
            return NotImplemented
        return self.raw_columns == other.raw_columns and (self.form_col, self.pos_col) == (
            other.form_col,
            other.pos_col,
        )

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"ConllToken({self.form!r}, pos={self.pos!r})"


@dataclass(frozen=True)
class CorefChain:
    """One coreference chain: original numeric id plus its mention spans."""

    chain_id: int
    mentions: tuple[Mention, ...]

    def __post_init__(self) -> None:
        if len(set(self.mentions)) != len(self.mentions):
            raise InvalidSpanError(f"duplicate mention span in chain {self.chain_id}")

    def mention_set(self) -> frozenset[Mention]:
        return frozenset(self.mentions)


class ConllDocument:
    """A parsed document: key, sentences of tokens, and coreference chains."""

    def __init__(
        self,
        doc_id: str,
        part: int,
        sentences: list[list[ConllToken]],
        chains: list[CorefChain],
        raw_text: str | None = None,
    ) -> None:
        self.doc_id = doc_id
        self.part = part
        self.sentences = sentences
        self.chains = chains
        self.raw_text = raw_text

    @property
    def doc_key(self) -> str:
        return f"{self.doc_id}/part_{self.part:03d}"

    @property
    def n_tokens(self) -> int:
        return sum(len(s) for s in self.sentences)

    def sentence_lengths(self) -> list[int]:
        return [len(s) for s in self.sentences]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConllDocument):
            return NotImplemented
        return (
            self.doc_id == other.doc_id
            and self.part == other.part
            and self.sentences == other.sentences
            and sorted((c.chain_id, tuple(sorted(c.mentions))) for c in self.chains)
            == sorted((c.chain_id, tuple(sorted(c.mentions))) for c in other.chains)
        )

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"ConllDocument({self.doc_key!r}, {len(self.sentences)} sentences)"

    @classmethod
    def build(
        cls,
        doc_id: str,
        part: int,
        sentences: list[list[tuple[str, str]]],
        chains: list[CorefChain] | None = None,
        speaker: str = "-",
    ) -> "ConllDocument":
        """Synthesize a document from ``(form, pos)`` sentences and chains.

        Emits the standard 12-column layout with the coreference column
        rendered from ``chains``.
        """
        chains = list(chains or [])
        lengths = [len(s) for s in sentences]
        _check_spans(chains, lengths)
        cells = coref_cells(chains, lengths)
        token_rows: list[list[ConllToken]] = []
        for s_idx, sent in enumerate(sentences):
            row: list[ConllToken] = []
            for t_idx, (form, pos) in enumerate(sent):
                cols = [
                    doc_id,
                    str(part),
                    str(t_idx),
                    form,
                    pos,
                    "*",
                    "-",
                    "-",
                    "-",
                    speaker,
                    "*",
                    cells[s_idx][t_idx],
                ]
                row.append(ConllToken.from_columns(cols))
            token_rows.append(row)
        return cls(doc_id, part, token_rows, chains)


def _check_spans(chains: Iterable[CorefChain], sentence_lengths: list[int]) -> None:
    for chain in chains:
        for sent, start, end in chain.mentions:
            if sent < 0 or sent >= len(sentence_lengths):
                raise InvalidSpanError(
                    f"chain {chain.chain_id}: sentence index {sent} out of range"
                )
            if not (0 <= start <= end < sentence_lengths[sent]):
                raise InvalidSpanError(
                    f"chain {chain.chain_id}: span ({sent},{start},{end}) out of bounds"
                )


def coref_cells(chains: Iterable[CorefChain], sentence_lengths: list[int]) -> list[list[str]]:
    """Render the coreference column cells for every token position.

    Convention at one position: opens for longer mentions first, then
    single-token mentions as ``(id)``, then closes with inner (later-starting)
    mentions first; pieces joined by ``|``, ``-`` when empty.
    """
    opens: dict[tuple[int, int], list[tuple[int, int]]] = {}
    singles: dict[tuple[int, int], list[int]] = {}
    closes: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for chain in chains:
        for sent, start, end in chain.mentions:
            if start == end:
                singles.setdefault((sent, start), []).append(chain.chain_id)
            else:
                opens.setdefault((sent, start), []).append((-end, chain.chain_id))
                closes.setdefault((sent, end), []).append((-start, chain.chain_id))
    cells: list[list[str]] = []
    for s_idx, length in enumerate(sentence_lengths):
        row: list[str] = []
        for t_idx in range(length):
            pos = (s_idx, t_idx)
            pieces: list[str] = []
            pieces.extend(f"({cid}" for _, cid in sorted(opens.get(pos, ())))
            pieces.extend(f"({cid})" for cid in sorted(singles.get(pos, ())))
            pieces.extend(f"{cid})" for _, cid in sorted(closes.get(pos, ())))
            row.append("|".join(pieces) if pieces else "-")
        cells.append(row)
    return cells


# -- parsing -----------------------------------------------------------------


def _decode(source: str | bytes | IO[str] | IO[bytes]) -> str:
    if hasattr(source, "read"):
        source = source.read()  # type: ignore[union-attr]
    if isinstance(source, bytes):
        try:
            return source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise BadEncodingError(f"input is not valid UTF-8: {exc}") from exc
    return source


def iter_conll_documents(
    source: str | bytes | IO[str] | IO[bytes],
    *,
    form_col: int = DEFAULT_FORM_COL,
    pos_col: int | None = DEFAULT_POS_COL,
    source_name: str = "<input>",
) -> Iterator[ConllDocument]:
    """Stream documents out of CoNLL content (see :func:`parse_conll`)."""
    text = _decode(source)
    lines = text.splitlines(keepends=True)

    min_cols = max(form_col, pos_col if pos_col is not None else 0) + 2

    in_doc = False
    doc_id = ""
    part = 0
    doc_start_line = 0
    sentences: list[list[ConllToken]] = []
    current: list[ConllToken] = []
    open_stacks: dict[int, list[tuple[int, int]]] = {}
    mentions_by_chain: dict[int, list[Mention]] = {}

    def close_sentence(line_no: int) -> None:
        nonlocal current
        if current:
            dangling = [cid for cid, stack in open_stacks.items() if stack]
            if dangling:
                raise UnbalancedBracketsError(
                    f"{source_name}:{line_no}: mention bracket for chain(s) "
                    f"{sorted(dangling)} not closed within its sentence"
                )
            sentences.append(current)
            current = []

    for line_no, raw in enumerate(lines, start=1):
        content = raw.rstrip("\r\n")
        eol = raw[len(content):]
        if not in_doc:
            if not content.strip():
                continue
            m = _BEGIN_RE.match(content)
            if not m:
                raise MalformedLineError(
                    "expected '#begin document (<id>); part <n>' header",
                    source=source_name,
                    line_no=line_no,
                )
            doc_id, part = m.group(1), int(m.group(2))
            in_doc = True
            doc_start_line = line_no
            sentences = []
            current = []
            open_stacks = {}
            mentions_by_chain = {}
            continue

        if _END_RE.match(content):
            close_sentence(line_no)
            chains = _finalize_chains(mentions_by_chain, source_name, doc_start_line)
            raw_text = "".join(lines[doc_start_line - 1 : line_no])
            yield ConllDocument(doc_id, part, sentences, chains, raw_text=raw_text)
            in_doc = False
            continue

        if not content.strip():
            close_sentence(line_no)
            continue

        if content.lstrip().startswith("#"):
            raise MalformedLineError(
                f"unexpected comment/control line inside document: {content!r}",
                source=source_name,
                line_no=line_no,
            )

        token = ConllToken.from_line(content, form_col, pos_col, eol)
        if token.ncols < min_cols:
            raise MalformedLineError(
                f"expected at least {min_cols} whitespace-separated columns, got {token.ncols}",
                source=source_name,
                line_no=line_no,
            )
        t_idx = len(current)
        s_idx = len(sentences)
        _apply_coref_cell(
            token.coref,
            s_idx,
            t_idx,
            open_stacks,
            mentions_by_chain,
            source_name,
            line_no,
        )
        current.append(token)

    if in_doc:
        raise MalformedLineError(
            "input ended before '#end document'", source=source_name, line_no=len(lines)
        )


def _apply_coref_cell(
    cell: str,
    s_idx: int,
    t_idx: int,
    open_stacks: dict[int, list[tuple[int, int]]],
    mentions_by_chain: dict[int, list[Mention]],
    source_name: str,
    line_no: int,
) -> None:
    if cell == "-":
        return
    for item in cell.split("|"):
        m = _COREF_ITEM_RE.match(item)
        if not m:
            raise MalformedLineError(
                f"bad coreference item {item!r} in cell {cell!r}",
                source=source_name,
                line_no=line_no,
            )
        has_open, cid_text, has_close = m.group(1), m.group(2), m.group(3)
        cid = int(cid_text)
        if has_open:
            open_stacks.setdefault(cid, []).append((s_idx, t_idx))
        if has_close:
            stack = open_stacks.get(cid)
            if not stack:
                raise UnbalancedBracketsError(
                    f"{source_name}:{line_no}: close bracket for chain {cid} with no open"
                )
            sent, start = stack.pop()
            mentions_by_chain.setdefault(cid, []).append((sent, start, t_idx))


def _finalize_chains(
    mentions_by_chain: dict[int, list[Mention]], source_name: str, doc_line: int
) -> list[CorefChain]:
    chains: list[CorefChain] = []
    for cid in sorted(mentions_by_chain):
        mentions = sorted(mentions_by_chain[cid])
        unique = sorted(set(mentions))
        if len(unique) != len(mentions):
            warnings.warn(
                f"{source_name}:{doc_line}: chain {cid} repeats an identical mention span; "
                "duplicates dropped",
                stacklevel=3,
            )
        chains.append(CorefChain(cid, tuple(unique)))
    return chains


def parse_conll(
    source: str | bytes | IO[str] | IO[bytes],
    *,
    form_col: int = DEFAULT_FORM_COL,
    pos_col: int | None = DEFAULT_POS_COL,
    source_name: str = "<input>",
) -> list[ConllDocument]:
    """Parse CoNLL-2012 content into documents.

    Accepts str, bytes, or a file object.  Raises
    :class:`~prolex.errors.BadEncodingError` for invalid UTF-8,
    :class:`~prolex.errors.MalformedLineError` for layout problems, and
    :class:`~prolex.errors.UnbalancedBracketsError` for bad coreference
    bracketing.
    """
    return list(
        iter_conll_documents(source, form_col=form_col, pos_col=pos_col, source_name=source_name)
    )


# -- writing -----------------------------------------------------------------


def render_document(doc: ConllDocument) -> str:
    """Render a document from its tokens (used when no raw text is stored)."""
    out: list[str] = [f"#begin document ({doc.doc_id}); part {doc.part:03d}\n"]
    for sentence in doc.sentences:
        for token in sentence:
            out.append(token.raw + (token.eol or "\n"))
        out.append("\n")
    out.append("#end document\n")
    return "".join(out)


def write_conll(docs: Iterable[ConllDocument]) -> bytes:
    """Serialize documents to UTF-8 bytes.

    Documents that still carry their parsed byte span are emitted verbatim,
    so ``write_conll(parse_conll(data))`` is byte-identical to ``data``.
    """
    parts: list[str] = []
    for doc in docs:
        parts.append(doc.raw_text if doc.raw_text is not None else render_document(doc))
    return "".join(parts).encode("utf-8")

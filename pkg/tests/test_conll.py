from __future__ import annotations

import io
import re

import pytest

from prolex import (
    BadEncodingError,
    ConllDocument,
    ConllToken,
    CorefChain,
    InvalidSpanError,
    MalformedLineError,
    UnbalancedBracketsError,
    coref_cells,
    iter_conll_documents,
    parse_conll,
    render_document,
    write_conll,
)


def simulate_chains(doc_text: str, coref_col: int = -1) -> set[tuple[int, int, int, int]]:
    """Stack-simulation oracle for mention extraction.

    Re-derives (chain_id, sentence, start, end) tuples from the raw column
    text with an independent bracket walk, sharing nothing with the parser.
    """
    mentions: set[tuple[int, int, int, int]] = set()
    open_stacks: dict[int, list[int]] = {}
    sent = 0
    tok = 0
    for line in doc_text.splitlines():
        if line.startswith("#"):
            continue
        if not line.strip():
            if tok:
                sent += 1
                tok = 0
            continue
        cell = line.split()[coref_col]
        if cell != "-":
            for item in cell.split("|"):
                m = re.fullmatch(r"(\()?(\d+)(\))?", item)
                assert m, item
                opened, cid, closed = m.group(1), int(m.group(2)), m.group(3)
                if opened:
                    open_stacks.setdefault(cid, []).append(tok)
                if closed:
                    start = open_stacks[cid].pop()
                    mentions.add((cid, sent, start, tok))
        tok += 1
    return mentions


def chains_as_tuples(doc: ConllDocument) -> set[tuple[int, int, int, int]]:
    return {
        (chain.chain_id, *mention) for chain in doc.chains for mention in chain.mentions
    }


class TestParsing:
    def test_minimal(self, samples_dir):
        docs = parse_conll((samples_dir / "minimal.conll").read_bytes())
        assert len(docs) == 1
        doc = docs[0]
        assert doc.doc_key.endswith("/part_000")
        assert len(doc.chains) == 1

    def test_forms_and_pos(self, samples_dir):
        doc = parse_conll((samples_dir / "spacing.conll").read_bytes())[0]
        tokens = [t for sent in doc.sentences for t in sent]
        assert any(t.pos == "PRP" for t in tokens)
        assert any(t.pos == "PRP$" for t in tokens)
        assert all(t.form == t.raw_columns[3] for t in tokens)

    def test_mentions_match_stack_oracle(self, all_conll_paths):
        for path in all_conll_paths:
            data = path.read_bytes()
            docs = parse_conll(data)
            starts = [m.start() for m in re.finditer(rb"(?m)^#begin", data)]
            ends = [m.end() for m in re.finditer(rb"(?m)^#end document$", data)]
            assert len(starts) == len(docs)
            for doc, lo, hi in zip(docs, starts, ends):
                segment = data[lo:hi].decode("utf-8")
                assert chains_as_tuples(doc) == simulate_chains(segment), path

    def test_nested_mentions(self, samples_dir):
        doc = parse_conll((samples_dir / "nested.conll").read_bytes())[0]
        spans = chains_as_tuples(doc)
        by_chain: dict[int, set] = {}
        for cid, s, a, b in spans:
            by_chain.setdefault(cid, set()).add((s, a, b))
        nested_pairs = [
            (outer, inner)
            for outer in spans
            for inner in spans
            if outer != inner
            and outer[1] == inner[1]
            and outer[2] <= inner[2]
            and inner[3] <= outer[3]
        ]
        assert nested_pairs, "fixture should contain nested mentions"

    def test_multidoc_keys(self, samples_dir):
        docs = parse_conll((samples_dir / "multidoc.conll").read_bytes())
        assert len(docs) == 3
        keys = [d.doc_key for d in docs]
        assert len(set(keys)) == 3
        assert any(k.endswith("part_001") for k in keys)

    def test_no_chain_document(self, samples_dir):
        docs = parse_conll((samples_dir / "nochains.conll").read_bytes())
        assert all(doc.chains == [] for doc in docs if "nochains" in doc.doc_id or True)

    def test_streaming_matches_eager(self, synthetic_dir):
        data = (synthetic_dir / "dev.conll").read_bytes()
        streamed = list(iter_conll_documents(io.BytesIO(data)))
        eager = parse_conll(data)
        assert streamed == eager

    def test_text_input(self, samples_dir):
        text = (samples_dir / "minimal.conll").read_text("utf-8")
        assert parse_conll(text) == parse_conll(text.encode("utf-8"))


class TestParsingErrors:
    def test_bad_encoding(self):
        with pytest.raises(BadEncodingError):
            parse_conll(b"#begin document (x); part 000\n\xff\xfe\n#end document\n")

    def test_stray_comment_inside_document(self):
        text = (
            "#begin document (x); part 000\n"
            "x 0 0 Hello UH * - - - - * -\n"
            "# not allowed here\n"
            "#end document\n"
        )
        with pytest.raises(MalformedLineError):
            parse_conll(text)

    def test_token_line_outside_document(self):
        with pytest.raises(MalformedLineError):
            parse_conll("x 0 0 Hello UH * - - - - * -\n")

    def test_missing_end(self):
        with pytest.raises(MalformedLineError):
            parse_conll("#begin document (x); part 000\nx 0 0 Hi UH * - - - - * -\n")

    def test_too_few_columns(self):
        text = "#begin document (x); part 000\nonly three cols\n#end document\n"
        with pytest.raises(MalformedLineError):
            parse_conll(text)

    def test_close_without_open(self):
        text = (
            "#begin document (x); part 000\n"
            "x 0 0 Hello UH * - - - - * 3)\n"
            "\n#end document\n"
        )
        with pytest.raises(UnbalancedBracketsError):
            parse_conll(text)

    def test_unclosed_at_sentence_end(self):
        text = (
            "#begin document (x); part 000\n"
            "x 0 0 Hello UH * - - - - * (3\n"
            "\n#end document\n"
        )
        with pytest.raises(UnbalancedBracketsError):
            parse_conll(text)

    def test_bad_coref_cell(self):
        text = (
            "#begin document (x); part 000\n"
            "x 0 0 Hello UH * - - - - * (a)\n"
            "\n#end document\n"
        )
        with pytest.raises(MalformedLineError):
            parse_conll(text)

    def test_duplicate_span_warns_and_dedupes(self):
        text = (
            "#begin document (x); part 000\n"
            "x 0 0 Hello UH * - - - - * (3)|(3)\n"
            "\n#end document\n"
        )
        with pytest.warns(UserWarning):
            docs = parse_conll(text)
        assert docs[0].chains[0].mentions == ((0, 0, 0),)


class TestByteRoundTrip:
    def test_all_bundled_files(self, all_conll_paths):
        for path in all_conll_paths:
            data = path.read_bytes()
            assert write_conll(parse_conll(data)) == data, path.name

    def test_round_trip_survives_reparse(self, samples_dir):
        data = (samples_dir / "spacing.conll").read_bytes()
        once = parse_conll(data)
        twice = parse_conll(write_conll(once))
        assert once == twice


class TestRendering:
    def test_coref_cells_reproduce_canonical_columns(self, all_conll_paths):
        # nested.conll deliberately uses a non-canonical item order inside
        # one cell to exercise parser tolerance; every other fixture is in
        # canonical order and must be reproduced exactly.
        for path in all_conll_paths:
            if path.name == "nested.conll":
                continue
            for doc in parse_conll(path.read_bytes()):
                cells = coref_cells(doc.chains, doc.sentence_lengths())
                original = [
                    [tok.coref for tok in sentence] for sentence in doc.sentences
                ]
                assert cells == original, (path.name, doc.doc_key)

    def test_coref_cells_semantically_faithful(self, all_conll_paths):
        # Regardless of item order, rendering the parsed chains and parsing
        # the result must reproduce the same mention structure.
        for path in all_conll_paths:
            for doc in parse_conll(path.read_bytes()):
                rebuilt = ConllDocument.build(
                    doc.doc_id,
                    doc.part,
                    [[(t.form, t.pos or "XX") for t in s] for s in doc.sentences],
                    list(doc.chains),
                )
                reparsed = parse_conll(write_conll([rebuilt]))[0]
                assert chains_as_tuples(reparsed) == chains_as_tuples(doc), path.name

    def test_build_write_parse_equality(self):
        chains = [
            CorefChain(0, ((0, 0, 0), (1, 0, 1))),
            CorefChain(5, ((0, 2, 3),)),
        ]
        doc = ConllDocument.build(
            "synthetic/example",
            0,
            [
                [("Ana", "NNP"), ("saw", "VBD"), ("the", "DT"), ("dog", "NN")],
                [("The", "DT"), ("dog", "NN"), ("barked", "VBD")],
            ],
            chains,
        )
        rendered = write_conll([doc])
        reparsed = parse_conll(rendered)
        assert reparsed == [doc]
        assert write_conll(reparsed) == rendered

    def test_build_rejects_bad_span(self):
        with pytest.raises(InvalidSpanError):
            ConllDocument.build("x", 0, [[("Hi", "UH")]], [CorefChain(0, ((0, 0, 5),))])
        with pytest.raises(InvalidSpanError):
            ConllDocument.build("x", 0, [[("Hi", "UH")]], [CorefChain(0, ((2, 0, 0),))])

    def test_render_header_pads_part(self):
        doc = ConllDocument.build("x", 7, [[("Hi", "UH")]])
        assert render_document(doc).startswith("#begin document (x); part 007\n")

    def test_chain_rejects_duplicate_mentions(self):
        with pytest.raises(InvalidSpanError):
            CorefChain(1, ((0, 0, 0), (0, 0, 0)))


class TestEditing:
    def test_with_form_preserves_spacing(self, samples_dir):
        doc = parse_conll((samples_dir / "spacing.conll").read_bytes())[0]
        token = doc.sentences[0][0]
        edited = token.with_form("PRP")
        assert edited.raw_columns[3] == "PRP"
        assert edited.raw_columns[:3] == token.raw_columns[:3]
        assert edited.raw_columns[4:] == token.raw_columns[4:]
        # Surrounding whitespace runs are untouched.
        assert re.sub(r"\S+", "", edited.raw) == re.sub(r"\S+", "", token.raw) or len(
            edited.form
        ) != len(token.form)

    def test_from_columns_rejects_embedded_whitespace(self):
        with pytest.raises(MalformedLineError):
            ConllToken.from_columns(["a b", "0", "0", "x", "X", "-"])

    def test_coref_property(self):
        token = ConllToken.from_columns(
            ["d", "0", "0", "word", "NN", "*", "-", "-", "-", "-", "*", "(2)"]
        )
        assert token.coref == "(2)"

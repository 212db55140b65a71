from __future__ import annotations

import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prolex import (
    MinerConfig,
    NeopronounMiner,
    RankTable,
    TokenCount,
    default_stoplist,
    export_counts_tsv,
    export_rank_csv,
    merge_counts,
    mine_stream,
    rank_frequency,
)
from prolex.mining import load_stoplist, parse_stoplist


def counts(lines, **kw):
    return {tc.token: tc.count for tc in mine_stream(lines, MinerConfig(**kw) if kw else None)}


class TestPipeline:
    def test_basic_hit(self):
        assert counts(["Ze saw zirself in the mirror."]) == {"zirself": 1}

    def test_case_and_nfc_normalized(self):
        got = counts(["ZIRSELF zirself ZirSelf"])
        assert got == {"zirself": 3}

    def test_hyphen_splitting(self):
        got = counts(["the bun-bunself case", "em‐emself too", "x‑xself"])
        assert got == {"bunself": 1, "emself": 1, "xself": 1}

    def test_edge_punctuation_stripped(self):
        got = counts(['"voidself," (starself) ...faeself!!'])
        assert got == {"voidself": 1, "starself": 1, "faeself": 1}

    def test_emoji_reflexive_survives_stripping(self):
        got = counts(["the sparkle pronoun ✨self shines"])
        assert got == {"✨self": 1}

    def test_selves_suffix(self):
        got = counts(["the faeselves gathered"])
        assert got == {"faeselves": 1}

    def test_min_length_excludes_bare_self(self):
        got = counts(["self improvement is not a pronoun self"])
        assert got == {}

    def test_min_length_boundary(self):
        # "xself" has length 5 and passes; "self" (4) never can.
        assert counts(["xself"]) == {"xself": 1}
        assert counts(["xself"], min_token_length=6) == {}

    def test_non_third_person_filtered(self):
        line = "myself yourself ourselves themselves theirselves zeself"
        assert counts([line]) == {"zeself": 1}

    def test_standard_reflexives_kept_by_default(self):
        got = counts(["himself herself itself themself zeself"])
        assert got == {
            "himself": 1,
            "herself": 1,
            "itself": 1,
            "themself": 1,
            "zeself": 1,
        }

    def test_exclude_standard_reflexives(self):
        got = counts(
            ["himself herself itself themself zeself"],
            exclude_standard_reflexives=True,
        )
        assert got == {"zeself": 1}

    def test_stoplist_applied(self):
        got = counts(["spamself eggself"], stoplist=frozenset({"spamself"}))
        assert got == {"eggself": 1}

    def test_stoplist_normalized(self):
        got = counts(["spamself"], stoplist=frozenset({"SPAMSELF"}))
        assert got == {}

    def test_custom_suffixes(self):
        got = counts(["rockstar popstar selfmade"], suffixes=("star",))
        assert got == {"rockstar": 1, "popstar": 1}

    def test_empty_suffixes_rejected(self):
        with pytest.raises(ValueError):
            MinerConfig(suffixes=())

    def test_bytes_lines_decoded(self):
        got = counts([b"ze admired zirself", "fae saw faeself"])
        assert got == {"zirself": 1, "faeself": 1}

    def test_bad_bytes_skipped(self):
        miner = NeopronounMiner().fit([b"\xff\xfe broken", b"good zirself"])
        assert miner.lines_skipped_ == 1
        assert miner.lines_read_ == 2
        assert {tc.token for tc in miner.counts_} == {"zirself"}

    def test_rejects_bare_string_input(self):
        with pytest.raises(TypeError):
            mine_stream("zirself zirself")

    def test_ordering(self):
        got = mine_stream(["bself aself bself cself aself bself"])
        assert [(tc.token, tc.count) for tc in got] == [
            ("bself", 3),
            ("aself", 2),
            ("cself", 1),
        ]


class TestStoplist:
    def test_default_contains_first_person(self):
        stop = default_stoplist()
        assert "myself" in stop
        assert "ourselves" in stop

    def test_parse_comments(self):
        stop = parse_stoplist("# comment\nfooself\n\n  barself  \n")
        assert stop == frozenset({"fooself", "barself"})

    def test_load_from_io(self):
        assert load_stoplist(io.StringIO("xself\n")) == frozenset({"xself"})


class TestMergeAndRank:
    def test_merge_equals_single_pass(self):
        lines = [f"token{i % 7}self filler" for i in range(200)]
        whole = mine_stream(lines)
        shards = [lines[i::4] for i in range(4)]
        merged = merge_counts([mine_stream(s) for s in shards])
        assert merged == whole

    def test_rank_table(self):
        table = rank_frequency(
            [TokenCount("a", 5), TokenCount("b", 5), TokenCount("c", 2), TokenCount("d", 1)]
        )
        assert table.rows == [(5, 2), (2, 1), (1, 1)]
        assert table.total_mentions == 13
        assert table.total_tokens == 4

    def test_rank_table_rejects_nonmonotonic(self):
        with pytest.raises(ValueError):
            RankTable(rows=[(2, 1), (5, 1)])

    def test_rank_table_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            RankTable(rows=[(3, 0)])

    def test_rank_conservation_matches_counts(self):
        lines = ["aself bself aself", "cself bself aself"]
        mined = mine_stream(lines)
        table = rank_frequency(mined)
        assert table.total_mentions == sum(tc.count for tc in mined)
        assert table.total_tokens == len(mined)


class TestExports:
    def test_rank_csv_bytes(self, tmp_path):
        table = rank_frequency([TokenCount("a", 3), TokenCount("b", 1)])
        out = tmp_path / "rank.csv"
        export_rank_csv(table, str(out))
        assert out.read_bytes() == b"count,num_tokens\n3,1\n1,1\n"

    def test_counts_tsv_bytes(self, tmp_path):
        out = tmp_path / "counts.tsv"
        export_counts_tsv([TokenCount("zeself", 2), TokenCount("aself", 1)], str(out))
        assert out.read_bytes() == b"token\tcount\nzeself\t2\naself\t1\n"

    def test_export_to_stream(self):
        buf = io.StringIO()
        export_counts_tsv([TokenCount("x" * 5, 1)], buf)
        assert buf.getvalue() == "token\tcount\nxxxxx\t1\n"


class TestEstimator:
    def test_fit_attributes(self):
        miner = NeopronounMiner()
        miner.fit(["ze saw zirself", "fae saw faeself and zirself"])
        assert [(tc.token, tc.count) for tc in miner.counts_] == [
            ("zirself", 2),
            ("faeself", 1),
        ]
        assert miner.lines_read_ == 2
        assert miner.rank_table_.total_mentions == 3

    def test_get_params(self):
        miner = NeopronounMiner(min_token_length=6)
        assert miner.get_params()["min_token_length"] == 6

    def test_set_params(self):
        miner = NeopronounMiner().set_params(exclude_standard_reflexives=True)
        miner.fit(["himself zirself"])
        assert {tc.token for tc in miner.counts_} == {"zirself"}


token_strategy = st.text(
    alphabet=st.sampled_from("abcdefgz✨🦄"), min_size=1, max_size=6
).map(lambda s: s + "self")


@given(
    lines=st.lists(
        st.lists(token_strategy, min_size=0, max_size=5).map(" ".join),
        min_size=0,
        max_size=30,
    ),
    n_shards=st.sampled_from([2, 3, 5]),
)
def test_shard_merge_invariant(lines, n_shards):
    """Mining shards independently then merging equals one pass."""
    whole = mine_stream(lines)
    shards = [lines[i::n_shards] for i in range(n_shards)]
    assert merge_counts([mine_stream(s) for s in shards]) == whole


@given(
    lines=st.lists(
        st.lists(token_strategy, min_size=0, max_size=5).map(" ".join),
        min_size=0,
        max_size=30,
    )
)
def test_rank_table_conserves_mentions(lines):
    mined = mine_stream(lines)
    table = rank_frequency(mined)
    assert table.total_mentions == sum(tc.count for tc in mined)
    assert table.total_tokens == len(mined)

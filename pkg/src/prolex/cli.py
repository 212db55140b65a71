"""Command-line interface.

Subcommands: ``registry``, ``delex``, ``relex``, ``mine``, ``score``.
Conventions: exit 0 on success, 1 on usage errors, 2 on data errors;
diagnostics go to stderr and data to stdout or ``--out`` files; output files
are written to a temp file and renamed into place, so a failed run never
leaves a partial artifact.  All file output is UTF-8 with LF line endings.
No subcommand touches the network.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys
import tempfile
import warnings
from importlib import metadata
from typing import IO, Iterator, Sequence

from . import conll as conll_io
from . import delex as delex_mod
from . import metrics as metrics_mod
from . import mining
from .errors import ProlexError
from .registry import (
    IndividualProfile,
    PronounCategory,
    Registry,
    dump_pronoun_sets,
    load_profile_file,
)

__all__ = ["main", "run"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems instead of exiting with code 2."""

    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _version() -> str:
    try:
        return metadata.version("prolex")
    except metadata.PackageNotFoundError:  # pragma: no cover - dev tree only
        return "0.0.0"


@contextlib.contextmanager
def _atomic_out(path: str) -> Iterator[IO[str]]:
    """Open a temp file next to ``path``; rename over it only on success."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".prolex-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise


def _write_output(path: str | None, payload: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(payload)
        return
    with _atomic_out(path) as fh:
        fh.write(payload)


def _load_registry(sets_path: str | None) -> Registry:
    registry = Registry()
    if sets_path:
        registry.load_file(sets_path)
    return registry


def _print_warnings(caught: list[warnings.WarningMessage]) -> None:
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)


# -- subcommand implementations ------------------------------------------------


def _cmd_registry(args: argparse.Namespace) -> int:
    registry = _load_registry(args.sets)
    if args.registry_cmd == "list":
        sys.stdout.write(dump_pronoun_sets(registry))
        return 0
    if args.registry_cmd == "lookup":
        hits = registry.lookup_form(args.form)
        for pronoun_set, case in hits:
            forms = " ".join(pronoun_set.forms.as_tuple())
            print(f"{pronoun_set.id}\t{case.value}\t{pronoun_set.category.value}\t{forms}")
        if not hits:
            print(f"no match for {args.form!r}", file=sys.stderr)
        return 0
    if args.registry_cmd == "derive":
        pronoun_set = registry.derive_set_from_stem(args.stem, args.category)
        line = dump_pronoun_sets([pronoun_set], header=False)
        if args.out:
            existing = ""
            if os.path.exists(args.out):
                with open(args.out, encoding="utf-8") as fh:
                    existing = fh.read()
            if line.strip("\n") not in existing.splitlines():
                if existing and not existing.endswith("\n"):
                    existing += "\n"
                _write_output(args.out, existing + line)
        sys.stdout.write(line)
        return 0
    if args.registry_cmd == "check-profile":
        profile = load_profile_file(args.profile, registry)
        validation = registry.validate_profile(profile)
        if validation.ok:
            print("ok")
            return 0
        for violation in validation.violations:
            print(violation)
        return 2
    raise UsageError("registry: unknown action")  # pragma: no cover


def _delex_conll_file(
    in_path: str, out_path: str, mode: str, split: str, pos_col: int, form_col: int
) -> delex_mod.DelexReport:
    report = delex_mod.DelexReport()
    with open(in_path, "rb") as fh:
        data = fh.read()
    with _atomic_out(out_path) as out:
        for doc in conll_io.iter_conll_documents(
            data, form_col=form_col, pos_col=pos_col, source_name=in_path
        ):
            new_doc, doc_report = delex_mod.delex_document(doc, mode, split=split)
            out.write(conll_io.write_conll([new_doc]).decode("utf-8"))
            report = report.merge(doc_report)
    return report


def _delex_text_file(
    in_path: str, out_path: str, mode: str, split: str, registry: Registry
) -> delex_mod.DelexReport:
    with open(in_path, encoding="utf-8") as fh:
        text = fh.read()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        out_text, report = delex_mod.delex_text(text, registry, mode, split=split)
    _print_warnings(caught)
    _write_output(out_path, out_text)
    return report


def _cmd_delex(args: argparse.Namespace) -> int:
    inputs: list[str] = args.inputs
    splits: list[str] = args.split or []
    if splits and len(splits) != len(inputs):
        raise UsageError("delex: --split must be given once per --in")
    if not splits:
        splits = [os.path.splitext(os.path.basename(p))[0] for p in inputs]
    if args.out and len(inputs) != 1:
        raise UsageError("delex: --out works with a single --in; use --out-dir for several")
    if not args.out and not args.out_dir:
        raise UsageError("delex: one of --out or --out-dir is required")

    registry = _load_registry(args.sets) if args.format == "text" else None
    report = delex_mod.DelexReport()
    for in_path, split in zip(inputs, splits):
        if args.out:
            out_path = args.out
        else:
            os.makedirs(args.out_dir, exist_ok=True)
            out_path = os.path.join(args.out_dir, os.path.basename(in_path))
        if args.format == "conll":
            file_report = _delex_conll_file(
                in_path, out_path, args.mode, split, args.pos_col, args.form_col
            )
        else:
            assert registry is not None
            file_report = _delex_text_file(in_path, out_path, args.mode, split, registry)
        report = report.merge(file_report)

    tsv = report.to_tsv(
        splits=list(dict.fromkeys(splits)),
        placeholders=list(delex_mod.placeholder_vocabulary(args.mode)),
    )
    if args.report:
        _write_output(args.report, tsv)
    else:
        sys.stderr.write(tsv)
    return 0


def _cmd_relex(args: argparse.Namespace) -> int:
    registry = _load_registry(args.sets)
    profile = load_profile_file(args.profile, registry)
    with open(args.input, encoding="utf-8") as fh:
        text = fh.read()
    out_text = delex_mod.relexicalize(
        text,
        profile,
        registry,
        fallback_set=args.fallback_set,
        avoid_marker=args.avoid_marker,
    )
    _write_output(args.out, out_text)
    return 0


def _cmd_mine(args: argparse.Namespace) -> int:
    stoplist = mining.load_stoplist(args.stoplist) if args.stoplist else mining.default_stoplist()
    config = mining.MinerConfig(
        suffixes=tuple(args.suffix) if args.suffix else mining.DEFAULT_SUFFIXES,
        stoplist=stoplist,
        filter_non_third_person=not args.keep_non_third_person,
        min_token_length=args.min_len,
        exclude_standard_reflexives=args.exclude_standard_reflexives,
    )

    def lines() -> Iterator[bytes]:
        for path in args.inputs:
            with open(path, "rb") as fh:
                yield from fh

    counter, stats = mining._mine_counter(lines(), config)
    counts = mining._ordered(counter)
    table = mining.rank_frequency(counts)

    counts_io: list[str] = []
    mining.export_counts_tsv(counts, _StringSink(counts_io))
    _write_output(args.counts_tsv, "".join(counts_io))
    if args.rank_csv:
        rank_io: list[str] = []
        mining.export_rank_csv(table, _StringSink(rank_io))
        _write_output(args.rank_csv, "".join(rank_io))
    print(
        f"lines: {stats.lines_read}  skipped: {stats.lines_skipped}  "
        f"unique tokens: {len(counts)}  mentions: {table.total_mentions if table.rows else 0}",
        file=sys.stderr,
    )
    return 0


class _StringSink:
    def __init__(self, sink: list[str]):
        self._sink = sink

    def write(self, payload: str) -> None:
        self._sink.append(payload)


def _cmd_score(args: argparse.Namespace) -> int:
    with open(args.key, "rb") as fh:
        key_docs = conll_io.parse_conll(fh.read(), source_name=args.key)
    with open(args.response, "rb") as fh:
        response_docs = conll_io.parse_conll(fh.read(), source_name=args.response)
    report = metrics_mod.score_documents(key_docs, response_docs)
    sys.stdout.write(metrics_mod.format_score_table(report))
    if args.csv:
        _write_output(args.csv, metrics_mod.score_report_csv(report))
    return 0


# -- parser ---------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="prolex", description=__doc__)
    parser.add_argument("--version", action="version", version=f"prolex {_version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_reg = sub.add_parser("registry", help="inspect and extend the pronoun inventory")
    reg_sub = p_reg.add_subparsers(dest="registry_cmd", required=True)
    p = reg_sub.add_parser("list", help="print all sets in pronoun-set file format")
    p.add_argument("--sets", help="extra pronoun-set file to load")
    p = reg_sub.add_parser("lookup", help="look up a surface form")
    p.add_argument("form")
    p.add_argument("--sets")
    p = reg_sub.add_parser("derive", help="derive a set from a stem")
    p.add_argument("stem")
    p.add_argument(
        "--category", default="custom", choices=[c.value for c in PronounCategory]
    )
    p.add_argument("--sets")
    p.add_argument("--out", help="pronoun-set file to add the derived set to")
    p = reg_sub.add_parser("check-profile", help="validate a profile file")
    p.add_argument("--profile", required=True)
    p.add_argument("--sets")
    p_reg.set_defaults(func=_cmd_registry)

    p_delex = sub.add_parser("delex", help="replace pronouns with placeholders")
    p_delex.add_argument("--mode", choices=[m.value for m in delex_mod.DelexMode], default="pos")
    p_delex.add_argument("--format", choices=["conll", "text"], default="conll")
    p_delex.add_argument("--in", dest="inputs", action="append", required=True, metavar="FILE")
    p_delex.add_argument("--split", action="append", help="split label per --in (default: file stem)")
    p_delex.add_argument("--out", help="output file (single input)")
    p_delex.add_argument("--out-dir", help="output directory (any number of inputs)")
    p_delex.add_argument("--report", help="write the count table TSV here (default: stderr)")
    p_delex.add_argument("--sets", help="pronoun-set file for text mode")
    p_delex.add_argument("--pos-col", type=int, default=conll_io.DEFAULT_POS_COL)
    p_delex.add_argument("--form-col", type=int, default=conll_io.DEFAULT_FORM_COL)
    p_delex.set_defaults(func=_cmd_delex)

    p_relex = sub.add_parser("relex", help="fill case-tagged placeholders for a profile")
    p_relex.add_argument("--in", dest="input", required=True, metavar="FILE")
    p_relex.add_argument("--out", required=True)
    p_relex.add_argument("--profile", required=True, help="profile file (policy header + pronoun rows)")
    p_relex.add_argument("--sets", help="extra pronoun-set file")
    p_relex.add_argument("--fallback-set", help="set id used by the mirrored policy")
    p_relex.add_argument("--avoid-marker", default=delex_mod.DEFAULT_AVOID_MARKER)
    p_relex.set_defaults(func=_cmd_relex)

    p_mine = sub.add_parser("mine", help="mine reflexive-suffix pronoun candidates")
    p_mine.add_argument("--in", dest="inputs", action="append", required=True, metavar="FILE")
    p_mine.add_argument("--stoplist", help="stoplist file (default: builtin list)")
    p_mine.add_argument("--suffix", action="append", help="suffix to mine (repeatable)")
    p_mine.add_argument("--min-len", type=int, default=5)
    p_mine.add_argument("--keep-non-third-person", action="store_true")
    p_mine.add_argument("--exclude-standard-reflexives", action="store_true")
    p_mine.add_argument("--counts-tsv", help="token/count TSV output (default: stdout)")
    p_mine.add_argument("--rank-csv", help="rank-frequency CSV output")
    p_mine.set_defaults(func=_cmd_mine)

    p_score = sub.add_parser("score", help="score response coreference against a key")
    p_score.add_argument("--key", required=True)
    p_score.add_argument("--response", required=True)
    p_score.add_argument("--csv", help="also write the scores as CSV")
    p_score.set_defaults(func=_cmd_score)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --version / --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ProlexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:  # console entry point
    sys.exit(run())

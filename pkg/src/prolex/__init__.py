"""prolex: open-class pronoun registry, delexicalization, mining, scoring.

The package models third-person pronouns as an open class: any nonempty
Unicode stem can become a pronoun set, individuals can declare any number of
sets plus a usage policy, and nothing infers someone's pronouns from names,
gender markers, or surrounding context.

Main entry points:

* :class:`Registry` / :class:`Lexicon` -- pronoun sets and surface lookup
* :func:`parse_conll` / :func:`write_conll` -- CoNLL-2012 coreference IO
* :func:`delex_document` / :func:`delex_text` / :func:`relexicalize`
* :func:`mine_stream` / :func:`rank_frequency`
* :func:`muc_score` / :func:`b_cubed` / :func:`ceaf_phi4` / :func:`conll_average`
* sklearn-style wrappers: :class:`Delexicalizer`, :class:`Relexicalizer`,
  :class:`NeopronounMiner`
"""

from importlib import metadata as _metadata

from . import errors
from .conll import (
    ConllDocument,
    ConllToken,
    CorefChain,
    coref_cells,
    iter_conll_documents,
    parse_conll,
    render_document,
    write_conll,
)
from .delex import (
    CASE_PLACEHOLDERS,
    DEFAULT_AVOID_MARKER,
    POS_PLACEHOLDERS,
    Delexicalizer,
    DelexMode,
    DelexReport,
    Relexicalizer,
    default_ambiguity_resolver,
    delex_document,
    delex_text,
    relexicalize,
)
from .errors import (
    BadEncodingError,
    DocumentMismatchError,
    DuplicateIdError,
    EmptyFormError,
    EmptyProfileError,
    InvalidProfileError,
    InvalidSpanError,
    MalformedLineError,
    MissingPosError,
    PlaceholderCollisionWarning,
    ProlexError,
    UnbalancedBracketsError,
    UnresolvedPlaceholderError,
)
from .metrics import (
    Clustering,
    ScoreReport,
    ScoreTriple,
    align_mentions,
    b_cubed,
    ceaf_phi4,
    conll_average,
    format_score_table,
    muc_score,
    phi4,
    score_documents,
    score_pairs,
    score_report_csv,
)
from .mining import (
    MinerConfig,
    NeopronounMiner,
    RankTable,
    TokenCount,
    default_stoplist,
    export_counts_tsv,
    export_rank_csv,
    load_stoplist,
    merge_counts,
    mine_stream,
    rank_frequency,
)
from .registry import (
    CASE_ORDER,
    IndividualProfile,
    Lexicon,
    ProfilePolicy,
    ProfileValidation,
    PronounCase,
    PronounCategory,
    PronounForms,
    PronounSet,
    Registry,
    builtin_inventory_text,
    dump_profile,
    dump_pronoun_sets,
    load_profile_file,
    load_pronoun_rows,
)

try:
    __version__ = _metadata.version("prolex")
except _metadata.PackageNotFoundError:  # pragma: no cover - source tree use
    __version__ = "0.0.0"

__all__ = [
    "errors",
    "__version__",
    # error types
    "ProlexError",
    "EmptyFormError",
    "DuplicateIdError",
    "MalformedLineError",
    "BadEncodingError",
    "UnbalancedBracketsError",
    "InvalidSpanError",
    "MissingPosError",
    "UnresolvedPlaceholderError",
    "EmptyProfileError",
    "InvalidProfileError",
    "DocumentMismatchError",
    "PlaceholderCollisionWarning",
    # registry
    "Registry",
    "Lexicon",
    "CASE_ORDER",
    "PronounForms",
    "PronounSet",
    "PronounCase",
    "PronounCategory",
    "IndividualProfile",
    "ProfilePolicy",
    "ProfileValidation",
    "load_pronoun_rows",
    "dump_pronoun_sets",
    "load_profile_file",
    "dump_profile",
    "builtin_inventory_text",
    # conll
    "ConllDocument",
    "ConllToken",
    "CorefChain",
    "parse_conll",
    "iter_conll_documents",
    "write_conll",
    "render_document",
    "coref_cells",
    # delex
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
    # mining
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
    # metrics
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
]

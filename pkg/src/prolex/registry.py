"""Open-class third-person pronoun sets, surface-form lookup, and profiles.

A :class:`Registry` holds pronoun sets (five case forms each) and maintains a
:class:`Lexicon` mapping normalized surface forms back to ``(set, case)``
pairs.  The class is open: any nonempty Unicode stem can be turned into a set
(``star -> star/star/stars/stars/starself``), and nothing here ever infers
which pronouns a referent uses from names, gender markers, or context.  That
information only enters the system through explicit registration and
:class:`IndividualProfile` data.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import IO, Iterable, Iterator

from .errors import (
    DuplicateIdError,
    EmptyFormError,
    MalformedLineError,
)

__all__ = [
    "PronounCase",
    "PronounCategory",
    "PronounForms",
    "PronounSet",
    "ProfilePolicy",
    "IndividualProfile",
    "ProfileValidation",
    "Lexicon",
    "Registry",
    "load_pronoun_rows",
    "dump_pronoun_sets",
    "load_profile_file",
    "dump_profile",
    "builtin_inventory_text",
]


def nfc(text: str) -> str:
    """NFC-normalize ``text`` (the normalization boundary for the package)."""
    return unicodedata.normalize("NFC", text)


class PronounCase(str, Enum):
    """The five case slots of a pronoun paradigm, in canonical column order."""

    NOMINATIVE = "nominative"
    ACCUSATIVE = "accusative"
    POSSESSIVE_DEPENDENT = "possessive_dependent"
    POSSESSIVE_INDEPENDENT = "possessive_independent"
    REFLEXIVE = "reflexive"


CASE_ORDER: tuple[PronounCase, ...] = tuple(PronounCase)


class PronounCategory(str, Enum):
    GENDERED = "gendered"
    GENDER_NEUTRAL = "gender_neutral"
    NEOPRONOUN = "neopronoun"
    NOUNSELF = "nounself"
    EMOJISELF = "emojiself"
    NUMBERSELF = "numberself"
    NAMESELF = "nameself"
    CUSTOM = "custom"


class ProfilePolicy(str, Enum):
    SINGLE = "single"
    EQUAL_ALTERNATING = "equal_alternating"
    MIRRORED = "mirrored"
    NAME_ONLY = "name_only"
    AVOID = "avoid"


def _clean_form(value: str, slot: str) -> str:
    if not isinstance(value, str):
        raise EmptyFormError(f"{slot} form must be a string, got {type(value).__name__}")
    out = nfc(value).strip()
    if not out:
        raise EmptyFormError(f"{slot} form is empty after normalization")
    return out


@dataclass(frozen=True)
class PronounForms:
    """The five surface forms of one pronoun set.

    Every field is NFC-normalized and stripped on construction; an empty
    result raises :class:`EmptyFormError`.  No structural constraint is put
    on user-supplied reflexives; only stem derivation guarantees the
    ``...self`` shape.
    """

    nominative: str
    accusative: str
    possessive_dependent: str
    possessive_independent: str
    reflexive: str

    def __post_init__(self) -> None:
        for case in CASE_ORDER:
            object.__setattr__(self, case.value, _clean_form(getattr(self, case.value), case.value))

    def by_case(self, case: PronounCase) -> str:
        return getattr(self, PronounCase(case).value)

    def items(self) -> Iterator[tuple[PronounCase, str]]:
        for case in CASE_ORDER:
            yield case, getattr(self, case.value)

    def as_tuple(self) -> tuple[str, str, str, str, str]:
        return tuple(getattr(self, c.value) for c in CASE_ORDER)  # type: ignore[return-value]


@dataclass(frozen=True)
class PronounSet:
    """A registered pronoun set: opaque id, forms, category, and provenance."""

    id: str
    forms: PronounForms
    category: PronounCategory
    source: str = "user"  # "builtin" | "user"

    def __post_init__(self) -> None:
        if self.source not in ("builtin", "user"):
            raise ValueError(f"source must be 'builtin' or 'user', got {self.source!r}")


@dataclass
class IndividualProfile:
    """Pronoun preferences for one referent.

    ``sets`` is an ordered list of registry set ids (possibly empty: people
    who avoid pronouns entirely are representable).  The policy says how the
    sets are consumed at relexicalization time.
    """

    name: str | None = None
    sets: list[str] = field(default_factory=list)
    policy: ProfilePolicy = ProfilePolicy.SINGLE


@dataclass
class ProfileValidation:
    """Outcome of :meth:`Registry.validate_profile`; violations are data."""

    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _is_foldable(form: str) -> bool:
    # Case folding is a natural-language notion; apply it only to forms made
    # entirely of alphabetic code points.  Emoji and digit forms ("0s") match
    # exactly.
    return form.isalpha()


# Lexicon entries are (registration_index, case_index, set_id, case) so a
# merged candidate list can always be sorted back into deterministic order.
_Entry = tuple[int, int, str, PronounCase]


class Lexicon:
    """Multimap from normalized surface form to ``(set id, case)`` pairs.

    Ambiguity is preserved: ``her`` maps to both the accusative and the
    dependent possessive of the same set, and a form shared by several sets
    maps to all of them.  Lookup order is deterministic: set registration
    order first, then canonical case order.
    """

    def __init__(self) -> None:
        self._exact: dict[str, list[_Entry]] = {}
        self._folded: dict[str, list[_Entry]] = {}

    def add_set(self, registration_index: int, pronoun_set: PronounSet) -> None:
        for case_index, (case, form) in enumerate(pronoun_set.forms.items()):
            entry: _Entry = (registration_index, case_index, pronoun_set.id, case)
            if _is_foldable(form):
                self._folded.setdefault(form.casefold(), []).append(entry)
            else:
                self._exact.setdefault(form, []).append(entry)

    def candidates(self, surface: str) -> list[tuple[str, PronounCase]]:
        """All ``(set id, case)`` pairs whose form matches ``surface``."""
        query = nfc(surface)
        hits: list[_Entry] = []
        hits.extend(self._exact.get(query, ()))
        hits.extend(self._folded.get(query.casefold(), ()))
        hits.sort(key=lambda e: (e[0], e[1]))
        return [(set_id, case) for _, _, set_id, case in hits]

    def __contains__(self, surface: str) -> bool:
        query = nfc(surface)
        return query in self._exact or query.casefold() in self._folded

    def __len__(self) -> int:
        return sum(len(v) for v in self._exact.values()) + sum(
            len(v) for v in self._folded.values()
        )


class Registry:
    """Pronoun-set store plus the lexicon derived from it.

    Registration is append-only and single-threaded; reads are safe to share
    across threads once building is done.  Two registries fed the same
    registration sequence produce identical ids and lookup results.
    """

    def __init__(self, seed_builtin: bool = True) -> None:
        self._sets: dict[str, PronounSet] = {}
        self._order: dict[str, int] = {}
        self.lexicon = Lexicon()
        if seed_builtin:
            self._seed_builtin()

    # -- registration -----------------------------------------------------

    def register_set(
        self,
        forms: PronounForms,
        category: PronounCategory | str,
        *,
        set_id: str | None = None,
        source: str = "user",
    ) -> PronounSet:
        """Register a new set and index its forms in the lexicon.

        The id is auto-derived from the forms unless ``set_id`` is given, in
        which case a collision raises :class:`DuplicateIdError`.
        """
        category = PronounCategory(category)
        if set_id is not None:
            if set_id in self._sets:
                raise DuplicateIdError(f"pronoun set id already registered: {set_id!r}")
            new_id = set_id
        else:
            new_id = self._auto_id(forms)
        ps = PronounSet(id=new_id, forms=forms, category=category, source=source)
        index = len(self._sets)
        self._sets[new_id] = ps
        self._order[new_id] = index
        self.lexicon.add_set(index, ps)
        return ps

    def derive_set_from_stem(
        self, stem: str, category: PronounCategory | str = PronounCategory.CUSTOM
    ) -> PronounSet:
        """Build and register ``stem/stem/stem+s/stem+s/stem+self``.

        Deriving the same stem and category twice returns the existing set
        instead of piling up duplicates.
        """
        stem = _clean_form(stem, "stem")
        forms = PronounForms(
            nominative=stem,
            accusative=stem,
            possessive_dependent=stem + "s",
            possessive_independent=stem + "s",
            reflexive=stem + "self",
        )
        existing = self.find_identical(forms, category)
        if existing is not None:
            return existing
        return self.register_set(forms, category)

    def _auto_id(self, forms: PronounForms) -> str:
        parts = forms.as_tuple()
        for k in range(1, len(parts) + 1):
            candidate = "-".join(parts[:k])
            if candidate not in self._sets:
                return candidate
        base = "-".join(parts)
        n = 2
        while f"{base}-{n}" in self._sets:
            n += 1
        return f"{base}-{n}"

    def _seed_builtin(self) -> None:
        for category, forms, source in load_pronoun_rows(builtin_inventory_text(), source="builtin"):
            self.register_set(forms, category, source=source)

    # -- lookup ------------------------------------------------------------

    def lookup_form(self, surface: str) -> list[tuple[PronounSet, PronounCase]]:
        """All sets/cases whose surface form matches ``surface``.

        Order is deterministic: registration order, then case order.
        """
        return [(self._sets[set_id], case) for set_id, case in self.lexicon.candidates(surface)]

    def get(self, set_id: str) -> PronounSet:
        return self._sets[set_id]

    def find_identical(
        self, forms: PronounForms, category: PronounCategory | str
    ) -> PronounSet | None:
        category = PronounCategory(category)
        for ps in self._sets.values():
            if ps.category == category and ps.forms == forms:
                return ps
        return None

    def __iter__(self) -> Iterator[PronounSet]:
        return iter(self._sets.values())

    def __len__(self) -> int:
        return len(self._sets)

    def __contains__(self, set_id: str) -> bool:
        return set_id in self._sets

    def ids(self) -> list[str]:
        return list(self._sets)

    # -- profiles ----------------------------------------------------------

    def validate_profile(self, profile: IndividualProfile) -> ProfileValidation:
        """Check a profile against this registry; violations come back as data."""
        violations: list[str] = []
        for sid in profile.sets:
            if sid not in self._sets:
                violations.append(f"unknown pronoun set id: {sid!r}")
        policy = ProfilePolicy(profile.policy)
        if policy == ProfilePolicy.NAME_ONLY and not (profile.name or "").strip():
            violations.append("policy 'name_only' requires a name")
        if policy in (ProfilePolicy.SINGLE, ProfilePolicy.EQUAL_ALTERNATING) and not profile.sets:
            violations.append(f"policy {policy.value!r} requires at least one pronoun set")
        return ProfileValidation(violations)

    # -- file IO -----------------------------------------------------------

    def register_rows(
        self, rows: Iterable[tuple[PronounCategory, PronounForms, str]]
    ) -> list[PronounSet]:
        """Register parsed pronoun-file rows, reusing identical existing sets."""
        out: list[PronounSet] = []
        for category, forms, source in rows:
            existing = self.find_identical(forms, category)
            out.append(existing if existing is not None else self.register_set(forms, category, source=source))
        return out

    def load_file(self, path_or_io: str | IO[str]) -> list[PronounSet]:
        text, source_name = _read_text(path_or_io)
        return self.register_rows(load_pronoun_rows(text, source_name=source_name))


# -- pronoun-set file format -----------------------------------------------
#
# Line-oriented UTF-8; '#' starts a comment line; data lines carry 7
# tab-separated fields:
#   category  nominative  accusative  possessive_dependent
#   possessive_independent  reflexive  source

_N_FIELDS = 7


def _read_text(path_or_io: str | IO[str]) -> tuple[str, str]:
    if hasattr(path_or_io, "read"):
        return path_or_io.read(), getattr(path_or_io, "name", "<stream>")
    with open(path_or_io, encoding="utf-8") as fh:
        return fh.read(), str(path_or_io)


def load_pronoun_rows(
    text: str, *, source: str | None = None, source_name: str = "<string>"
) -> list[tuple[PronounCategory, PronounForms, str]]:
    """Parse pronoun-set file content into ``(category, forms, source)`` rows.

    ``source`` overrides the file's source field when given (used for the
    builtin inventory).
    """
    rows: list[tuple[PronounCategory, PronounForms, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip("\n\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != _N_FIELDS:
            raise MalformedLineError(
                f"expected {_N_FIELDS} tab-separated fields, got {len(fields)}",
                source=source_name,
                line_no=line_no,
            )
        cat_text, nom, acc, pd, pi, refl, src = (f.strip() for f in fields)
        try:
            category = PronounCategory(cat_text)
        except ValueError:
            raise MalformedLineError(
                f"unknown category {cat_text!r} (expected one of: "
                + ", ".join(c.value for c in PronounCategory) + ")",
                source=source_name,
                line_no=line_no,
            ) from None
        if src not in ("builtin", "user"):
            raise MalformedLineError(
                f"unknown source {src!r} (expected 'builtin' or 'user')",
                source=source_name,
                line_no=line_no,
            )
        try:
            forms = PronounForms(nom, acc, pd, pi, refl)
        except EmptyFormError as exc:
            raise MalformedLineError(str(exc), source=source_name, line_no=line_no) from exc
        rows.append((category, forms, source if source is not None else src))
    return rows


def dump_pronoun_sets(sets: Iterable[PronounSet], *, header: bool = True) -> str:
    """Serialize sets in the pronoun-set file format (UTF-8, LF, tabs)."""
    lines: list[str] = []
    if header:
        lines.append(
            "# category\tnominative\taccusative\tpossessive_dependent"
            "\tpossessive_independent\treflexive\tsource"
        )
    for ps in sets:
        lines.append("\t".join((ps.category.value, *ps.forms.as_tuple(), ps.source)))
    return "\n".join(lines) + "\n"


def builtin_inventory_text() -> str:
    """The shipped builtin inventory, in pronoun-set file format."""
    return resources.files("prolex").joinpath("data/builtin_pronouns.tsv").read_text("utf-8")


# -- profile file format -----------------------------------------------------
#
# Same as the pronoun-set format, preceded by one non-comment header line:
#   <policy>            or          <policy>\t<name>
# followed by the profile's pronoun rows in order.


def load_profile_file(path_or_io: str | IO[str], registry: Registry) -> IndividualProfile:
    """Load a profile file, registering (or reusing) its pronoun sets."""
    text, source_name = _read_text(path_or_io)
    header: str | None = None
    body_lines: list[str] = []
    header_line_no = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            if header is not None:
                body_lines.append(raw)
            continue
        if header is None:
            header = raw
            header_line_no = line_no
        else:
            body_lines.append(raw)
    if header is None:
        raise MalformedLineError("profile file has no header line", source=source_name)
    head_fields = [f.strip() for f in header.split("\t")]
    if len(head_fields) not in (1, 2):
        raise MalformedLineError(
            "profile header must be '<policy>' or '<policy>\\t<name>'",
            source=source_name,
            line_no=header_line_no,
        )
    try:
        policy = ProfilePolicy(head_fields[0])
    except ValueError:
        raise MalformedLineError(
            f"unknown policy {head_fields[0]!r} (expected one of: "
            + ", ".join(p.value for p in ProfilePolicy) + ")",
            source=source_name,
            line_no=header_line_no,
        ) from None
    name = head_fields[1] if len(head_fields) == 2 and head_fields[1] else None
    rows = load_pronoun_rows("\n".join(body_lines), source_name=source_name)
    sets = registry.register_rows(rows)
    return IndividualProfile(name=name, sets=[ps.id for ps in sets], policy=policy)


def dump_profile(profile: IndividualProfile, registry: Registry) -> str:
    """Serialize a profile to the profile file format."""
    head = profile.policy.value if profile.name is None else f"{profile.policy.value}\t{profile.name}"
    body = dump_pronoun_sets((registry.get(sid) for sid in profile.sets), header=False)
    return head + "\n" + body

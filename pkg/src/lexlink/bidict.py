"""Bilingual dictionary parsing, subentry case classification and direction merging.

Dictionary files are tab-separated, one subentry per line::

    <headword>\t<index>\t<pos>\t<cue|->\t<semfield|->\t<translation>(;<translation>)*
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import TYPE_CHECKING, Iterable, Mapping

from lexlink.taxonomy import TaxonomyIndex, normalize_lemma

if TYPE_CHECKING:
    from lexlink.normalizer import Normalizer

EMPTY_FIELD = "-"
N_FIELDS = 6


class BidictError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Subentry:
    headword: str
    index: int
    pos: str
    cue: str | None
    semfield: str | None
    translations: tuple[str, ...]
    filtered: bool = False

    def __post_init__(self):
        if not self.translations:
            raise ValueError("subentry needs at least one translation")
        if self.index < 1:
            raise ValueError("subentry index must be >= 1")

    @property
    def key(self) -> tuple[str, int]:
        return (self.headword, self.index)

    def distinct_translations(self) -> tuple[str, ...]:
        """Raw translations with duplicates (after case/space folding) dropped."""
        seen: dict[str, str] = {}
        for t in self.translations:
            seen.setdefault(normalize_lemma(t), t)
        return tuple(seen.values())


def pos_matches(pos: str, pos_filter: str | None) -> bool:
    """``n`` matches ``n``, ``n.m.``, ``n.f.pl.`` and so on."""
    if not pos_filter:
        return True
    pos = pos.strip().lower()
    pos_filter = pos_filter.strip().lower().rstrip(".")
    return pos.rstrip(".") == pos_filter or pos.startswith(pos_filter + ".")


def parse_bidict(text: str, pos_filter: str | None = "n") -> list[Subentry]:
    """Parse dictionary TSV content into subentries, in file order.

    Subentries whose part of speech does not match ``pos_filter`` are kept with
    ``filtered=True``.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        fields = raw.rstrip("\r\n").split("\t")
        if len(fields) != N_FIELDS:
            raise BidictError(f"expected {N_FIELDS} tab-separated fields, got {len(fields)}", lineno)
        headword, index, pos, cue, semfield, trans = (f.strip() for f in fields)
        if not headword:
            raise BidictError("empty headword", lineno)
        try:
            idx = int(index)
        except ValueError:
            raise BidictError(f"subentry index {index!r} is not an integer", lineno) from None
        if idx < 1:
            raise BidictError(f"subentry index must be >= 1, got {idx}", lineno)
        if not pos:
            raise BidictError("empty part of speech", lineno)
        translations = tuple(t.strip() for t in trans.split(";") if t.strip())
        if not translations:
            raise BidictError("empty translation field", lineno)
        out.append(
            Subentry(
                headword=headword.lower(),
                index=idx,
                pos=pos,
                cue=None if cue in ("", EMPTY_FIELD) else cue,
                semfield=None if semfield in ("", EMPTY_FIELD) else semfield,
                translations=translations,
                filtered=not pos_matches(pos, pos_filter),
            )
        )
    return out


_INLINE_RE = re.compile(
    r"^\s*(?P<head>[^\d:]+?)\s+(?P<index>\d+)\s*:\s*(?P<pos>\S+)\s*(?P<rest>.*)$"
)


def convert_inline_entry(line: str) -> str:
    """Turn a typeset entry like ``maintien 2: n.m. (conservation) maintenance``
    into a dictionary TSV line.

    A first bracketed group is the cue; a second one is the semantic field.
    Translations are separated by commas. Only meant for building fixtures.
    """
    m = _INLINE_RE.match(line)
    if m is None:
        raise BidictError(f"cannot parse inline entry {line!r}")
    rest = m["rest"]
    groups = []
    while rest.startswith("("):
        close = rest.find(")")
        if close < 0:
            break
        groups.append(rest[1:close].strip())
        rest = rest[close + 1:].lstrip()
    cue = groups[0] if groups else EMPTY_FIELD
    semfield = groups[1] if len(groups) > 1 else EMPTY_FIELD
    translations = [t.strip() for t in rest.rstrip(".").split(",") if t.strip()]
    return "\t".join([m["head"].strip(), m["index"], m["pos"], cue, semfield, ";".join(translations)])


@dataclass(frozen=True)
class CaseSet:
    case1_monosemous: bool = False
    case2_multi_translation: bool = False
    case3_cue: bool = False
    case4_semfield: bool = False
    not_in_taxonomy: bool = False

    @property
    def unclassifiable(self) -> bool:
        return not (self.any_case or self.not_in_taxonomy)

    @property
    def any_case(self) -> bool:
        return (self.case1_monosemous or self.case2_multi_translation
                or self.case3_cue or self.case4_semfield)

    def cases(self) -> tuple[int, ...]:
        flags = (self.case1_monosemous, self.case2_multi_translation,
                 self.case3_cue, self.case4_semfield)
        return tuple(i for i, f in enumerate(flags, start=1) if f)


def classify_subentry(s: Subentry, tax: TaxonomyIndex, norm: "Normalizer") -> CaseSet:
    lemmas = norm.translation_lemmas(s)
    if not lemmas:
        return CaseSet(not_in_taxonomy=True)
    return CaseSet(
        case1_monosemous=any(tax.is_monosemous(l) for l in lemmas),
        case2_multi_translation=len(s.distinct_translations()) > 1,
        case3_cue=s.cue is not None,
        case4_semfield=s.semfield is not None,
    )


@dataclass(frozen=True, order=True)
class EquivalencePair:
    target_noun: str
    source_noun: str

    def __post_init__(self):
        if not self.target_noun or not self.source_noun:
            raise ValueError("equivalence pair members must be nonempty")


def pairs_from_subentries(
    subentries: Iterable[Subentry], headword_is_target: bool
) -> list[EquivalencePair]:
    """Flatten noun subentries into equivalence pairs.

    ``headword_is_target`` says which side of the dictionary is in the
    taxonomy's language.
    """
    pairs = []
    for s in subentries:
        if s.filtered:
            continue
        head = normalize_lemma(s.headword)
        for t in s.translations:
            other = normalize_lemma(t)
            if not other:
                continue
            if headword_is_target:
                pairs.append(EquivalencePair(head, other))
            else:
                pairs.append(EquivalencePair(other, head))
    return pairs


@dataclass(frozen=True)
class MergedDictionary:
    pairs: frozenset[EquivalencePair]
    by_target: Mapping[str, frozenset[str]]
    by_source: Mapping[str, frozenset[str]]

    @classmethod
    def from_pairs(cls, pairs: Iterable[EquivalencePair]) -> "MergedDictionary":
        pairs = frozenset(pairs)
        by_target: dict[str, set[str]] = {}
        by_source: dict[str, set[str]] = {}
        for p in pairs:
            by_target.setdefault(p.target_noun, set()).add(p.source_noun)
            by_source.setdefault(p.source_noun, set()).add(p.target_noun)
        return cls(
            pairs=pairs,
            by_target=MappingProxyType({k: frozenset(v) for k, v in by_target.items()}),
            by_source=MappingProxyType({k: frozenset(v) for k, v in by_source.items()}),
        )

    def sorted_pairs(self) -> list[EquivalencePair]:
        return sorted(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


def merge_directions(
    ab: Iterable[EquivalencePair], ba: Iterable[EquivalencePair]
) -> MergedDictionary:
    """Union of the two (already identically oriented) pair lists."""
    return MergedDictionary.from_pairs([*ab, *ba])


@dataclass(frozen=True)
class DictionaryCoverage:
    taxonomy_synsets: int
    taxonomy_lemmas: int
    target_nouns: int
    source_nouns: int
    connections: int
    target_in_taxonomy: int
    source_in_taxonomy: int
    reachable_synsets: int
    pairs_in_taxonomy: int
    max_connections: int


def coverage_report(md: MergedDictionary, tax: TaxonomyIndex) -> DictionaryCoverage:
    """Upper bounds on what any merge heuristic can link.

    ``max_connections`` counts distinct (source noun, synset) pairs reachable
    through an in-taxonomy target noun.
    """
    in_tax = {t for t in md.by_target if tax.has_lemma(t)}
    reachable: set[str] = set()
    for t in in_tax:
        reachable.update(tax.senses_of(t))
    good_pairs = [p for p in md.pairs if p.target_noun in in_tax]
    max_links = {(p.source_noun, s) for p in good_pairs for s in tax.senses_of(p.target_noun)}
    return DictionaryCoverage(
        taxonomy_synsets=len(tax.synsets),
        taxonomy_lemmas=len(tax.lemma_index),
        target_nouns=len(md.by_target),
        source_nouns=len(md.by_source),
        connections=len(md.pairs),
        target_in_taxonomy=len(in_tax),
        source_in_taxonomy=len({p.source_noun for p in good_pairs}),
        reachable_synsets=len(reachable),
        pairs_in_taxonomy=len(good_pairs),
        max_connections=len(max_links),
    )

"""Attach source-language nouns to taxonomy synsets.

Two procedures live here:

* the per-subentry pipeline (monosemous translation, then density over the
  other translations, then density over the cue's translations);
* the four structural merge cases over an equivalence-pair dictionary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from lexlink.bidict import MergedDictionary, Subentry
from lexlink.density import disambiguate
from lexlink.normalizer import Normalizer
from lexlink.taxonomy import TaxonomyIndex, normalize_lemma

ENTRY_METHODS = ("mono", "multi", "cue")
MERGE_METHODS = ("case1", "case2", "case3", "case4")
METHODS = ENTRY_METHODS + MERGE_METHODS
ALL_CASES = frozenset({1, 2, 3, 4})

ONE = Fraction(1)


@dataclass(frozen=True)
class SenseLink:
    source_lemma: str
    synset: str
    method: str
    score: Fraction = ONE
    via: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown link method {self.method!r}")

    @property
    def key(self) -> tuple[str, str]:
        return (self.source_lemma, self.synset)


@dataclass(frozen=True)
class MergedLink:
    """A deduplicated (source, synset) link with every method that produced it."""

    source_lemma: str
    synset: str
    methods: tuple[str, ...]
    score: Fraction = ONE
    via: tuple[str, ...] = ()

    @property
    def method(self) -> str:
        return ",".join(self.methods)


@dataclass(frozen=True)
class LinkerConfig:
    max_cue_senses: int = 5
    apply_heuristic_to_multi: bool = False
    enabled_merge_cases: frozenset[int] = ALL_CASES

    def __post_init__(self):
        if self.max_cue_senses < 1:
            raise ValueError("max_cue_senses must be >= 1")
        bad = set(self.enabled_merge_cases) - ALL_CASES
        if bad:
            raise ValueError(f"unknown merge case(s): {sorted(bad)}")


@dataclass
class StageResult:
    links: list[SenseLink] = field(default_factory=list)
    reason: str | None = None
    # translation lemma -> why it was not disambiguated
    skipped: dict[str, str] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.links)

    def __iter__(self):
        return iter(self.links)

    def __len__(self) -> int:
        return len(self.links)


class CueDictionary:
    """Source headword -> target-language translations, used to expand cues."""

    def __init__(self, subentries: Iterable[Subentry]):
        table: dict[str, list[str]] = {}
        for s in subentries:
            if s.filtered:
                continue
            bucket = table.setdefault(normalize_lemma(s.headword), [])
            for t in s.distinct_translations():
                if t not in bucket:
                    bucket.append(t)
        self._table = {k: tuple(v) for k, v in table.items()}

    def __contains__(self, headword: object) -> bool:
        return headword in self._table

    def __iter__(self):
        return iter(self._table)

    def translations(self, headword: str) -> tuple[str, ...]:
        return self._table.get(headword, ())


# ---------------------------------------------------------------------------
# entry pipeline


def link_monosemous(s: Subentry, tax: TaxonomyIndex, norm: Normalizer) -> StageResult:
    res = StageResult()
    for lemma in norm.translation_lemmas(s):
        senses = tax.senses_of(lemma)
        if len(senses) == 1:
            res.links.append(SenseLink(s.headword, senses[0], "mono", ONE, (lemma,)))
    if not res.links:
        res.reason = "no monosemous translation"
    return res


def _density_links(
    source: str, lemmas: Sequence[str], context_of, tax: TaxonomyIndex, method: str,
    max_senses: int | None,
) -> StageResult:
    res = StageResult()
    for lemma in lemmas:
        n = len(tax.senses_of(lemma))
        if max_senses is not None and n > max_senses:
            res.skipped[lemma] = "heuristic"
            continue
        d = disambiguate(tax, lemma, context_of(lemma))
        for sense in d.chosen_senses:
            res.links.append(SenseLink(source, sense, method, d.score.density, (lemma,)))
    return res


def link_by_translations(
    s: Subentry, tax: TaxonomyIndex, norm: Normalizer, cfg: LinkerConfig = LinkerConfig()
) -> StageResult:
    lemmas = norm.translation_lemmas(s)
    if len(lemmas) < 2:
        return StageResult(reason="single translation")
    cap = cfg.max_cue_senses if cfg.apply_heuristic_to_multi else None
    res = _density_links(
        s.headword, lemmas, lambda t: [l for l in lemmas if l != t], tax, "multi", cap
    )
    if not res.links and res.skipped:
        res.reason = "heuristic"
    return res


def cue_context(s: Subentry, cues: CueDictionary, norm: Normalizer) -> tuple[str, ...]:
    """Taxonomy lemmas of every translation of every word the cue resolves to."""
    if s.cue is None:
        return ()
    context: list[str] = []
    for head in norm.resolve_cue(s.cue).resolved:
        for phrase in cues.translations(head):
            for lemma in norm.resolve_translation(phrase).resolved:
                if lemma not in context:
                    context.append(lemma)
    return tuple(context)


def link_by_cue(
    s: Subentry, cues: CueDictionary, tax: TaxonomyIndex, norm: Normalizer,
    cfg: LinkerConfig = LinkerConfig(),
) -> StageResult:
    if s.cue is None:
        return StageResult(reason="no cue")
    context = cue_context(s, cues, norm)
    if not context:
        return StageResult(reason="cue not found")
    lemmas = norm.translation_lemmas(s)
    if not lemmas:
        return StageResult(reason="translation not in taxonomy")
    res = _density_links(s.headword, lemmas, lambda t: context, tax, "cue", cfg.max_cue_senses)
    if not res.links and res.skipped:
        res.reason = "heuristic"
    return res


@dataclass(frozen=True)
class CoverageReport:
    counts: Mapping[str, int]
    no_result: int
    skipped_by_heuristic: int = 0

    @property
    def result_obtained(self) -> int:
        return sum(self.counts.values())

    @property
    def total(self) -> int:
        return self.result_obtained + self.no_result

    def percent(self, n: int) -> Fraction | None:
        return Fraction(100 * n, self.total) if self.total else None

    def rows(self) -> list[tuple[str, int]]:
        return [
            ("no result", self.no_result),
            ("result obtained", self.result_obtained),
            ("case 1; 1 sense", self.counts.get("mono", 0)),
            ("case 2; >1 trans", self.counts.get("multi", 0)),
            ("case 3; cue", self.counts.get("cue", 0)),
            ("total", self.total),
        ]


@dataclass(frozen=True)
class EntryTrace:
    subentry: Subentry
    method: str | None
    reasons: Mapping[str, str]
    skipped: Mapping[str, str]


def link_sort_key(link: SenseLink):
    return (link.source_lemma, link.synset, link.method)


def run_entry_pipeline(
    subentries: Iterable[Subentry],
    cues: CueDictionary,
    tax: TaxonomyIndex,
    norm: Normalizer,
    cfg: LinkerConfig = LinkerConfig(),
    trace: list[EntryTrace] | None = None,
) -> tuple[list[SenseLink], CoverageReport]:
    """Run mono -> multi -> cue on each noun subentry; the first stage that
    links anything wins. Semantic fields are never used as evidence."""
    links: list[tuple[tuple[str, int], SenseLink]] = []
    counts = dict.fromkeys(ENTRY_METHODS, 0)
    no_result = 0
    heuristic_skips = 0
    stages = (
        ("mono", lambda s: link_monosemous(s, tax, norm)),
        ("multi", lambda s: link_by_translations(s, tax, norm, cfg)),
        ("cue", lambda s: link_by_cue(s, cues, tax, norm, cfg)),
    )
    for s in subentries:
        if s.filtered:
            continue
        winner = None
        reasons: dict[str, str] = {}
        skipped: dict[str, str] = {}
        for name, stage in stages:
            res = stage(s)
            skipped.update({f"{name}:{k}": v for k, v in res.skipped.items()})
            if res.links:
                winner = name
                links.extend((s.key, link) for link in res.links)
                break
            reasons[name] = res.reason or "no link"
        heuristic_skips += sum(1 for v in skipped.values() if v == "heuristic")
        if winner is None:
            no_result += 1
        else:
            counts[winner] += 1
        if trace is not None:
            trace.append(EntryTrace(s, winner, reasons, skipped))
    # two translations may land on the same synset; keep the better-scored link
    best: dict[tuple, SenseLink] = {}
    for entry_key, link in links:
        k = (entry_key, link.synset, link.method)
        prev = best.get(k)
        if prev is None or link.score > prev.score:
            best[k] = link
    ordered = [best[k] for k in sorted(best)]
    return ordered, CoverageReport(counts, no_result, heuristic_skips)


# ---------------------------------------------------------------------------
# merge cases


def _dedup(links: list[SenseLink]) -> list[SenseLink]:
    """One link per (source, synset) within a case; witnesses are pooled."""
    pooled: dict[tuple[str, str], SenseLink] = {}
    for link in links:
        prev = pooled.get(link.key)
        if prev is not None:
            link = SenseLink(link.source_lemma, link.synset, link.method, link.score,
                             tuple(sorted(set(prev.via) | set(link.via))))
        pooled[link.key] = link
    return sorted(pooled.values(), key=link_sort_key)


def merge_case1(md: MergedDictionary, tax: TaxonomyIndex) -> list[SenseLink]:
    """Source nouns translating a monosemous target noun."""
    out = []
    for p in md.sorted_pairs():
        senses = tax.senses_of(p.target_noun)
        if len(senses) == 1:
            out.append(SenseLink(p.source_noun, senses[0], "case1", ONE, (p.target_noun,)))
    return _dedup(out)


def merge_case2(md: MergedDictionary, tax: TaxonomyIndex) -> list[SenseLink]:
    """Source nouns with a single translation: link to every sense of it."""
    out = []
    for source, targets in md.by_source.items():
        if len(targets) != 1:
            continue
        (t,) = targets
        for sense in tax.senses_of(t):
            out.append(SenseLink(source, sense, "case2", ONE, (t,)))
    return _dedup(out)


def merge_case3(md: MergedDictionary, tax: TaxonomyIndex) -> list[SenseLink]:
    """Target nouns with a single translation: link it to every target sense."""
    out = []
    for t, sources in md.by_target.items():
        if len(sources) != 1:
            continue
        (source,) = sources
        for sense in tax.senses_of(t):
            out.append(SenseLink(source, sense, "case3", ONE, (t,)))
    return _dedup(out)


def merge_case4(md: MergedDictionary, tax: TaxonomyIndex) -> list[SenseLink]:
    """Synsets where two or more lemmas share the same source translation."""
    witnesses: dict[tuple[str, str], set[str]] = {}
    for p in md.pairs:
        for sense in tax.senses_of(p.target_noun):
            witnesses.setdefault((p.source_noun, sense), set()).add(p.target_noun)
    out = [
        SenseLink(source, sense, "case4", ONE, tuple(sorted(lemmas)))
        for (source, sense), lemmas in witnesses.items()
        if len(lemmas) >= 2
    ]
    return _dedup(out)


MERGE_CASES = {1: merge_case1, 2: merge_case2, 3: merge_case3, 4: merge_case4}


@dataclass(frozen=True)
class MergeStats:
    # None when the links do not record which target nouns produced them
    target_nouns: int | None
    source_nouns: int
    synsets: int
    connections: int

    @property
    def polysemy(self) -> Fraction | None:
        return Fraction(self.connections, self.source_nouns) if self.source_nouns else None

    @property
    def synonymy(self) -> Fraction | None:
        return Fraction(self.connections, self.synsets) if self.synsets else None


def ratio_str(value: Fraction | None, places: int = 2) -> str:
    """Half-up decimal rendering; ``-`` when the ratio is undefined."""
    if value is None:
        return "-"
    q = Decimal(1).scaleb(-places)
    return str((Decimal(value.numerator) / Decimal(value.denominator)).quantize(q, ROUND_HALF_UP))


def compute_stats(links: Iterable[SenseLink | MergedLink]) -> MergeStats:
    """Counts over distinct (source, synset) connections."""
    keys: set[tuple[str, str]] = set()
    targets: set[str] = set()
    untraced = False
    for link in links:
        keys.add((link.source_lemma, link.synset))
        targets.update(link.via)
        untraced = untraced or not link.via
    return MergeStats(
        target_nouns=None if untraced else len(targets),
        source_nouns=len({s for s, _ in keys}),
        synsets=len({y for _, y in keys}),
        connections=len(keys),
    )


def union_links(links: Iterable[SenseLink]) -> list[MergedLink]:
    grouped: dict[tuple[str, str], list[SenseLink]] = {}
    for link in links:
        grouped.setdefault(link.key, []).append(link)
    out = []
    for (source, synset), group in sorted(grouped.items()):
        methods = tuple(sorted({l.method for l in group}, key=METHODS.index))
        via = tuple(sorted({v for l in group for v in l.via}))
        out.append(MergedLink(source, synset, methods, max(l.score for l in group), via))
    return out


@dataclass(frozen=True)
class MergeResult:
    links: list[MergedLink]
    per_case: Mapping[int, MergeStats]
    total: MergeStats
    case_links: Mapping[int, list[SenseLink]]


def merge_all(md: MergedDictionary, tax: TaxonomyIndex, cfg: LinkerConfig = LinkerConfig()) -> MergeResult:
    case_links = {c: MERGE_CASES[c](md, tax) for c in sorted(cfg.enabled_merge_cases)}
    union = union_links(l for ls in case_links.values() for l in ls)
    return MergeResult(
        links=union,
        per_case={c: compute_stats(ls) for c, ls in case_links.items()},
        total=compute_stats(union),
        case_links=case_links,
    )

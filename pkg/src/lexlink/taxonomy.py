"""Immutable WordNet-style noun taxonomy: synsets, lemmas and the hypernym DAG.

File format, one synset per line (UTF-8, ``#`` comments ignored)::

    <id>\t<lemma>(,<lemma>)*\t<hypernym-id>(,<hypernym-id>)*

The hypernym column may be empty for roots.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping


class TaxonomyError(ValueError):
    """Raised when a taxonomy file is malformed or violates an invariant."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def normalize_lemma(text: str) -> str:
    return "_".join(text.strip().lower().split())


@dataclass(frozen=True)
class Synset:
    id: str
    lemmas: tuple[str, ...]
    hypernyms: frozenset[str] = frozenset()

    @property
    def is_root(self) -> bool:
        return not self.hypernyms

    def __str__(self) -> str:
        return "<" + ", ".join(l.replace("_", " ") for l in self.lemmas) + ">"


@dataclass(frozen=True)
class TaxonomyIndex:
    synsets: Mapping[str, Synset]
    lemma_index: Mapping[str, frozenset[str]]
    roots: frozenset[str]
    _hyponyms: Mapping[str, frozenset[str]] = field(repr=False, compare=False)

    @classmethod
    def from_synsets(cls, synsets: Iterable[Synset]) -> "TaxonomyIndex":
        """Build and validate an index. Raises TaxonomyError on bad structure."""
        by_id: dict[str, Synset] = {}
        for s in synsets:
            if s.id in by_id:
                raise TaxonomyError(f"duplicate synset id {s.id!r}")
            by_id[s.id] = s
        _validate(by_id, {})
        return _build(by_id)

    def __len__(self) -> int:
        return len(self.synsets)

    def __contains__(self, synset_id: object) -> bool:
        return synset_id in self.synsets

    def __getitem__(self, synset_id: str) -> Synset:
        return self.synsets[synset_id]

    def has_lemma(self, lemma: str) -> bool:
        return lemma in self.lemma_index

    def hyponyms(self, synset_id: str) -> frozenset[str]:
        self._require(synset_id)
        return self._hyponyms.get(synset_id, frozenset())

    def _require(self, synset_id: str) -> None:
        if synset_id not in self.synsets:
            raise KeyError(f"unknown synset id {synset_id!r}")

    # query helpers mirror the module-level functions
    def senses_of(self, lemma: str) -> tuple[str, ...]:
        return senses_of(self, lemma)

    def is_monosemous(self, lemma: str) -> bool:
        return is_monosemous(self, lemma)

    def descendants(self, root: str) -> frozenset[str]:
        return descendants(self, root)

    def ancestors(self, synset_id: str) -> list[str]:
        return ancestors(self, synset_id)


def _build(by_id: dict[str, Synset]) -> TaxonomyIndex:
    lemma_index: dict[str, set[str]] = {}
    hyponyms: dict[str, set[str]] = {}
    for s in by_id.values():
        for lemma in s.lemmas:
            lemma_index.setdefault(lemma, set()).add(s.id)
        for h in s.hypernyms:
            hyponyms.setdefault(h, set()).add(s.id)
    return TaxonomyIndex(
        synsets=MappingProxyType(dict(by_id)),
        lemma_index=MappingProxyType({k: frozenset(v) for k, v in lemma_index.items()}),
        roots=frozenset(s.id for s in by_id.values() if s.is_root),
        _hyponyms=MappingProxyType({k: frozenset(v) for k, v in hyponyms.items()}),
    )


def _validate(by_id: dict[str, Synset], line_of: dict[str, int]) -> None:
    for s in by_id.values():
        if not s.lemmas:
            raise TaxonomyError(f"synset {s.id!r} has no lemmas", line_of.get(s.id))
        if s.id in s.hypernyms:
            raise TaxonomyError(f"synset {s.id!r} is its own hypernym", line_of.get(s.id))
        for h in sorted(s.hypernyms):
            if h not in by_id:
                raise TaxonomyError(
                    f"synset {s.id!r} names unknown hypernym {h!r}", line_of.get(s.id)
                )

    # iterative DFS over hypernym edges; grey nodes on the stack mean a cycle
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(by_id, WHITE)
    for start in sorted(by_id):
        if colour[start] != WHITE:
            continue
        path = [start]
        stack = [(start, iter(sorted(by_id[start].hypernyms)))]
        colour[start] = GREY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[node] = BLACK
                stack.pop()
                path.pop()
            elif colour[nxt] == GREY:
                cycle = path[path.index(nxt):] + [nxt]
                raise TaxonomyError(
                    "hypernym cycle: " + " -> ".join(cycle), line_of.get(nxt)
                )
            elif colour[nxt] == WHITE:
                colour[nxt] = GREY
                path.append(nxt)
                stack.append((nxt, iter(sorted(by_id[nxt].hypernyms))))


def load_taxonomy(text: str) -> TaxonomyIndex:
    """Parse taxonomy-file content into a validated :class:`TaxonomyIndex`."""
    by_id: dict[str, Synset] = {}
    line_of: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) == 2:
            parts.append("")
        if len(parts) != 3:
            raise TaxonomyError(f"expected 3 tab-separated fields, got {len(parts)}", lineno)
        sid, lemma_field, hyper_field = (p.strip() for p in parts)
        if not sid:
            raise TaxonomyError("empty synset id", lineno)
        if sid in by_id:
            raise TaxonomyError(f"duplicate synset id {sid!r}", lineno)
        lemmas: list[str] = []
        for raw_lemma in lemma_field.split(","):
            lemma = normalize_lemma(raw_lemma)
            if lemma and lemma not in lemmas:
                lemmas.append(lemma)
        if not lemmas:
            raise TaxonomyError(f"synset {sid!r} has an empty lemma list", lineno)
        hypernyms = frozenset(h.strip() for h in hyper_field.split(",") if h.strip())
        by_id[sid] = Synset(sid, tuple(lemmas), hypernyms)
        line_of[sid] = lineno
    _validate(by_id, line_of)
    return _build(by_id)


def serialize_taxonomy(tax: TaxonomyIndex) -> str:
    lines = []
    for sid in sorted(tax.synsets):
        s = tax.synsets[sid]
        lines.append(f"{sid}\t{','.join(s.lemmas)}\t{','.join(sorted(s.hypernyms))}")
    return "".join(line + "\n" for line in lines)


def senses_of(tax: TaxonomyIndex, lemma: str) -> tuple[str, ...]:
    """Synset ids holding ``lemma``, sorted by id. Unknown lemmas give ``()``."""
    return tuple(sorted(tax.lemma_index.get(lemma, ())))


def is_monosemous(tax: TaxonomyIndex, lemma: str) -> bool:
    return len(tax.lemma_index.get(lemma, ())) == 1


def descendants(tax: TaxonomyIndex, root: str) -> frozenset[str]:
    """Hyponym closure of ``root``, including ``root`` itself."""
    tax._require(root)
    seen = {root}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for child in tax._hyponyms.get(node, ()):
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return frozenset(seen)


def ancestors(tax: TaxonomyIndex, synset_id: str) -> list[str]:
    """Hypernym closure of ``synset_id`` ordered by (distance, id); excludes itself."""
    tax._require(synset_id)
    dist = {synset_id: 0}
    frontier = [synset_id]
    while frontier:
        nxt = []
        for node in frontier:
            for h in tax.synsets[node].hypernyms:
                if h not in dist:
                    dist[h] = dist[node] + 1
                    nxt.append(h)
        frontier = nxt
    del dist[synset_id]
    return sorted(dist, key=lambda s: (dist[s], s))

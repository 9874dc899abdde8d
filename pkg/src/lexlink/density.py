"""Subtree semantic density word sense disambiguation.

Every sense of the target word and every sense of each context word puts a
mark on its synset. A candidate subtree is rooted at a sense of the target or
at one of its ancestors; its density is marks inside the subtree divided by
the number of synsets in it. The target senses lying under the densest root
are returned.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from lexlink.taxonomy import TaxonomyIndex


class UnknownWordError(KeyError):
    pass


@dataclass(frozen=True)
class MarkSet:
    target: str
    context: tuple[str, ...]
    marks: Mapping[str, int]

    def words(self) -> tuple[str, ...]:
        return (self.target,) + tuple(w for w in self.context if w != self.target)


@dataclass(frozen=True)
class DensityScore:
    root: str
    marks: int
    subtree_size: int

    @property
    def density(self) -> Fraction:
        return Fraction(self.marks, self.subtree_size)

    def sort_key(self):
        return (-self.density, -self.marks, self.subtree_size, self.root)

    def __str__(self) -> str:
        return f"{self.marks}/{self.subtree_size}"


@dataclass(frozen=True)
class Disambiguation:
    target: str
    chosen_senses: tuple[str, ...]
    winning_root: str
    score: DensityScore

    def to_tsv(self) -> str:
        return f"{','.join(self.chosen_senses)}\t{self.winning_root}\t{self.score}"


def subtree_size(tax: TaxonomyIndex, root: str) -> int:
    """Size measure used as the density denominator: synsets in the subtree."""
    return len(tax.descendants(root))


SizeMeasure = Callable[[TaxonomyIndex, str], int]


def _distinct(context: Iterable[str]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(context))


def mark_senses(tax: TaxonomyIndex, target: str, context: Iterable[str]) -> MarkSet:
    if not tax.senses_of(target):
        raise UnknownWordError(f"target {target!r} has no sense in the taxonomy")
    context = _distinct(context)
    marks: Counter[str] = Counter()
    for word in dict.fromkeys((target, *context)):
        for s in tax.senses_of(word):
            marks[s] += 1
    return MarkSet(target, context, dict(marks))


def candidate_roots(tax: TaxonomyIndex, target: str) -> list[str]:
    roots: set[str] = set()
    for s in tax.senses_of(target):
        roots.add(s)
        roots.update(tax.ancestors(s))
    return sorted(roots)


def score_subtrees(
    tax: TaxonomyIndex, ms: MarkSet, size: SizeMeasure = subtree_size
) -> list[DensityScore]:
    """Score every candidate root; best first."""
    scores = []
    for root in candidate_roots(tax, ms.target):
        below = tax.descendants(root)
        marks = sum(n for s, n in ms.marks.items() if s in below)
        scores.append(DensityScore(root, marks, size(tax, root)))
    scores.sort(key=DensityScore.sort_key)
    return scores


def disambiguate(
    tax: TaxonomyIndex,
    target: str,
    context: Iterable[str] = (),
    size: SizeMeasure = subtree_size,
) -> Disambiguation:
    ms = mark_senses(tax, target, context)
    best = score_subtrees(tax, ms, size)[0]
    below = tax.descendants(best.root)
    chosen = tuple(s for s in tax.senses_of(target) if s in below)
    return Disambiguation(target, chosen, best.root, best)

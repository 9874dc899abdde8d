"""Independent brute-force reference implementations and random generators.

Nothing here calls into the traversal or scoring code under test; taxonomies
are handled as plain ``{id: (lemmas, parents)}`` dicts.
"""

from __future__ import annotations

import random
from fractions import Fraction

from lexlink.taxonomy import Synset, TaxonomyIndex

Raw = dict[str, tuple[tuple[str, ...], tuple[str, ...]]]


def random_dag(rng: random.Random, n: int, n_lemmas: int, max_parents: int = 2,
               p_root: float = 0.05) -> Raw:
    """Random hypernym DAG: parents always have a smaller index, so no cycles."""
    ids = [f"s{i:03d}" for i in range(n)]
    lemmas = [f"l{j}" for j in range(n_lemmas)]
    raw: Raw = {}
    for i, sid in enumerate(ids):
        if i == 0 or rng.random() < p_root:
            parents: tuple[str, ...] = ()
        else:
            k = rng.randint(1, min(max_parents, i))
            parents = tuple(sorted(set(rng.sample(ids[:i], k))))
        words = tuple(dict.fromkeys(rng.sample(lemmas, rng.randint(1, 3))))
        raw[sid] = (words, parents)
    return raw


def to_index(raw: Raw) -> TaxonomyIndex:
    return TaxonomyIndex.from_synsets(
        Synset(sid, words, frozenset(parents)) for sid, (words, parents) in raw.items()
    )


def to_text(raw: Raw) -> str:
    return "".join(f"{sid}\t{','.join(w)}\t{','.join(p)}\n" for sid, (w, p) in raw.items())


def brute_descendants(raw: Raw, root: str) -> set[str]:
    """Fixed point of 'has a parent already in the set', by repeated full scans."""
    out = {root}
    changed = True
    while changed:
        changed = False
        for sid, (_, parents) in raw.items():
            if sid not in out and any(p in out for p in parents):
                out.add(sid)
                changed = True
    return out


def brute_ancestors(raw: Raw, sid: str) -> set[str]:
    return {r for r in raw if r != sid and sid in brute_descendants(raw, r)}


def brute_senses(raw: Raw, lemma: str) -> list[str]:
    return sorted(sid for sid, (words, _) in raw.items() if lemma in words)


def brute_disambiguate(raw: Raw, target: str, context: list[str]):
    """Enumerate every synset as a potential root and rank them naively.

    Returns (chosen senses, winning root, marks, size).
    """
    words = {target} | set(context)
    target_senses = brute_senses(raw, target)
    table = []
    for root in sorted(raw):
        below = brute_descendants(raw, root)
        if not any(s in below for s in target_senses):
            continue
        marks = 0
        for sid in below:
            marks += sum(1 for w in words if w in raw[sid][0])
        size = len(below)
        table.append((Fraction(marks, size), marks, size, root))
    table.sort(key=lambda r: (-r[0], -r[1], r[2], r[3]))
    _, marks, size, root = table[0]
    below = brute_descendants(raw, root)
    return [s for s in target_senses if s in below], root, marks, size


def random_dictionary(rng: random.Random, targets: list[str], n_sources: int,
                      n_pairs: int) -> list[tuple[str, str]]:
    sources = [f"src{i}" for i in range(n_sources)]
    pairs = {(rng.choice(targets), rng.choice(sources)) for _ in range(n_pairs)}
    return sorted(pairs)

"""Turn complex translations and cues into lemmas that can be looked up.

Two steps are tried: a naive suffix-stripping lemmatizer, then contiguous
multiword combinations (longest first), falling back to the individual
component words.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Collection, Iterable

from lexlink.taxonomy import TaxonomyIndex, normalize_lemma

Lookup = Callable[[str], bool]
Lemmatizer = Callable[[str, Lookup], "str | None"]

# (suffix, replacement) pairs, tried in order
TARGET_RULES: tuple[tuple[str, str], ...] = (
    ("s", ""),
    ("es", ""),
    ("ies", "y"),
    ("ves", "f"),
    ("ves", "fe"),
)
SOURCE_RULES: tuple[tuple[str, str], ...] = (
    ("s", ""),
    ("x", ""),
    ("aux", "al"),
)

STOPWORDS = frozenset({"the", "of", "a", "de", "d", "du", "des", "la", "le"})

KINDS = ("direct", "morphological", "compound", "components", "unresolved")


@dataclass(frozen=True)
class ResolvedPhrase:
    original: str
    resolved: tuple[str, ...]
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind in ("direct", "morphological", "compound") and len(self.resolved) != 1:
            raise ValueError(f"{self.kind} resolution must carry exactly one lemma")
        if self.kind == "components" and not self.resolved:
            raise ValueError("components resolution needs at least one lemma")
        if self.kind == "unresolved" and self.resolved:
            raise ValueError("unresolved phrase cannot carry lemmas")

    def to_tsv(self) -> str:
        return f"{self.kind}\t{','.join(self.resolved)}"


def _apply_rules(form: str, lookup: Lookup, rules: Iterable[tuple[str, str]]) -> str | None:
    if lookup(form):
        return form
    for suffix, repl in rules:
        if len(form) > len(suffix) and form.endswith(suffix):
            candidate = form[: -len(suffix)] + repl
            if lookup(candidate):
                return candidate
    return None


def lemmatize_target(form: str, lookup: Lookup) -> str | None:
    """English-side lemma for ``form``, checked against the taxonomy lookup."""
    return _apply_rules(form, lookup, TARGET_RULES)


def lemmatize_source(form: str, dict_lookup: Lookup) -> str | None:
    """French-side noun lemma for ``form``, checked against dictionary headwords."""
    return _apply_rules(form, dict_lookup, SOURCE_RULES)


@dataclass(frozen=True)
class Token:
    text: str
    bracketed: bool = False


_TOKEN_RE = re.compile(r"[()]|[^\s,'’()]+")
_STRIP = ".;:!?\"«»"


def tokenize(phrase: str) -> list[Token]:
    """Split on whitespace, commas and apostrophes; mark tokens inside brackets."""
    tokens = []
    depth = 0
    for m in _TOKEN_RE.finditer(phrase.lower()):
        piece = m.group()
        if piece == "(":
            depth += 1
        elif piece == ")":
            depth = max(0, depth - 1)
        else:
            piece = piece.strip(_STRIP)
            if piece:
                tokens.append(Token(piece, depth > 0))
    return tokens


def resolve_complex(phrase: str, lookup: Lookup, lemmatize: Lemmatizer) -> ResolvedPhrase:
    direct = normalize_lemma(phrase.replace("(", " ").replace(")", " "))
    if direct and lookup(direct):
        return ResolvedPhrase(phrase, (direct,), "direct")

    tokens = tokenize(phrase)
    if len(tokens) == 1:
        word = tokens[0].text
        lemma = lemmatize(word, lookup)
        if lemma is not None:
            return ResolvedPhrase(phrase, (lemma,), "direct" if lemma == word else "morphological")
        return ResolvedPhrase(phrase, (), "unresolved")

    words = [t.text for t in tokens]
    for size in range(len(words), 1, -1):
        for start in range(len(words) - size + 1):
            lemma = lemmatize("_".join(words[start:start + size]), lookup)
            if lemma is not None:
                return ResolvedPhrase(phrase, (lemma,), "compound")

    found: list[str] = []
    for tok in tokens:
        if tok.bracketed or tok.text in STOPWORDS:
            continue
        lemma = lemmatize(tok.text, lookup)
        if lemma is not None and lemma not in found:
            found.append(lemma)
    if found:
        return ResolvedPhrase(phrase, tuple(found), "components")
    return ResolvedPhrase(phrase, (), "unresolved")


class Normalizer:
    """Binds the lookups: translations resolve against the taxonomy, cues
    against the headwords of the source-language dictionary."""

    def __init__(self, tax: TaxonomyIndex, headwords: Collection[str] = ()):
        self.tax = tax
        self.headwords = frozenset(normalize_lemma(h) for h in headwords)
        self._cache: dict[tuple[str, str], ResolvedPhrase] = {}

    def resolve_translation(self, phrase: str) -> ResolvedPhrase:
        key = ("t", phrase)
        if key not in self._cache:
            self._cache[key] = resolve_complex(phrase, self.tax.has_lemma, lemmatize_target)
        return self._cache[key]

    def resolve_cue(self, phrase: str) -> ResolvedPhrase:
        key = ("c", phrase)
        if key not in self._cache:
            self._cache[key] = resolve_complex(
                phrase, self.headwords.__contains__, lemmatize_source
            )
        return self._cache[key]

    def translation_lemmas(self, subentry) -> tuple[str, ...]:
        """Taxonomy lemmas for all translations of ``subentry``, deduplicated in order."""
        out: list[str] = []
        for t in subentry.distinct_translations():
            for lemma in self.resolve_translation(t).resolved:
                if lemma not in out:
                    out.append(lemma)
        return tuple(out)

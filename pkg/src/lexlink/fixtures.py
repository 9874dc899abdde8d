"""Small data files shipped with the package (worked examples, toy taxonomies)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

NAMES = (
    "worked_taxonomy.tsv",
    "worked_en_es.tsv",
    "worked_es_en.tsv",
    "worked_merge_links.golden.tsv",
    "entry_taxonomy.tsv",
    "entry_fr_en.tsv",
    "cue_fr_en.tsv",
    "four_subtrees_taxonomy.tsv",
)


def fixture_path(name: str) -> Path:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return Path(str(resources.files("lexlink") / "data" / name))


def fixture_text(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8")

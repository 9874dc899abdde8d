"""``lexlink`` command line front end.

Exit status: 0 success, 2 usage or unreadable input, 3 invalid data.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from lexlink.bidict import (
    BidictError,
    coverage_report,
    merge_directions,
    pairs_from_subentries,
    parse_bidict,
)
from lexlink.density import UnknownWordError, disambiguate
from lexlink.linker import (
    ALL_CASES,
    CueDictionary,
    LinkerConfig,
    compute_stats,
    merge_all,
    run_entry_pipeline,
)
from lexlink.normalizer import Normalizer, lemmatize_source, lemmatize_target, resolve_complex
from lexlink.report import (
    format_links,
    format_stats,
    parse_links,
    plot_entry_report,
    plot_merge_stats,
    render_coverage_table,
    render_entry_report,
    render_stats_table,
)
from lexlink.taxonomy import TaxonomyError, load_taxonomy, normalize_lemma

log = logging.getLogger("lexlink")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 2, 3


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    inputs: dict[str, dict[str, str]] = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    def add_input(self, role: str, path: str, text: str) -> None:
        self.inputs[role] = {"path": path, "sha256": digest(text)}

    def write(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def verify_manifest(path: str | Path) -> dict[str, bool]:
    """Recompute input digests; maps role -> whether the file is unchanged."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    out = {}
    for role, info in data["inputs"].items():
        try:
            out[role] = digest(_read(info["path"])) == info["sha256"]
        except UsageError:
            out[role] = False
    return out


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def _load_taxonomy(path: str, manifest: RunManifest | None = None):
    text = _read(path)
    if manifest is not None:
        manifest.add_input("taxonomy", path, text)
    try:
        return load_taxonomy(text)
    except TaxonomyError as exc:
        raise DataError(f"{path}: {exc}") from None


def _load_dict(path: str, role: str, manifest: RunManifest | None = None):
    text = _read(path)
    if manifest is not None:
        manifest.add_input(role, path, text)
    try:
        return parse_bidict(text)
    except BidictError as exc:
        raise DataError(f"{path}: {exc}") from None


def _emit(path: str | None, text: str, manifest: RunManifest | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    _write(path, text)
    if manifest is not None:
        manifest.outputs.append(path)


def _parse_cases(text: str) -> frozenset[int]:
    cases = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if not part.isdigit() or int(part) not in ALL_CASES:
            raise UsageError(f"unknown merge case {part!r} (expected 1-4)")
        cases.add(int(part))
    return frozenset(cases)


def cmd_link(args) -> int:
    started = time.perf_counter()
    manifest = RunManifest("link")
    tax = _load_taxonomy(args.taxonomy, manifest)
    subentries = _load_dict(args.dict, "dict", manifest)
    cfg = LinkerConfig(max_cue_senses=args.max_cue_senses,
                       apply_heuristic_to_multi=args.multi_heuristic)
    manifest.config = {"max_cue_senses": cfg.max_cue_senses,
                       "apply_heuristic_to_multi": cfg.apply_heuristic_to_multi}
    cues = CueDictionary(subentries)
    norm = Normalizer(tax, cues)
    links, report = run_entry_pipeline(subentries, cues, tax, norm, cfg)
    log.info("linked %d of %d subentries", report.result_obtained, report.total)

    _emit(args.out, format_links(links), manifest)
    table = render_entry_report(report)
    if args.report:
        _emit(args.report, table, manifest)
    elif args.out not in (None, "-"):
        sys.stdout.write(table)
    if args.plot:
        plot_entry_report(report, args.plot)
        manifest.outputs.append(args.plot)
    _finish(manifest, started, args.manifest)
    return EXIT_OK


def cmd_merge(args) -> int:
    started = time.perf_counter()
    manifest = RunManifest("merge")
    cases = _parse_cases(args.cases)
    tax = _load_taxonomy(args.taxonomy, manifest)
    ab = pairs_from_subentries(_load_dict(args.dict_ab, "dict_ab", manifest), headword_is_target=True)
    ba = pairs_from_subentries(_load_dict(args.dict_ba, "dict_ba", manifest), headword_is_target=False)
    md = merge_directions(ab, ba)
    cfg = LinkerConfig(enabled_merge_cases=cases)
    manifest.config = {"cases": sorted(cases)}
    result = merge_all(md, tax, cfg)
    log.info("merged %d pairs into %d links", len(md), len(result.links))

    scopes = {f"case{c}": s for c, s in result.per_case.items()}
    scopes["total"] = result.total
    _emit(args.out, format_links(result.links), manifest)
    if args.stats:
        _emit(args.stats, format_stats(scopes), manifest)
    coverage = coverage_report(md, tax)
    table = render_coverage_table(coverage) + "\n" + render_stats_table(scopes, coverage)
    if args.report:
        _emit(args.report, table, manifest)
    elif args.out not in (None, "-"):
        sys.stdout.write(table)
    if args.plot:
        plot_merge_stats(scopes, args.plot)
        manifest.outputs.append(args.plot)
    _finish(manifest, started, args.manifest)
    return EXIT_OK


def cmd_wsd(args) -> int:
    tax = _load_taxonomy(args.taxonomy)
    word = normalize_lemma(args.word)
    context = [normalize_lemma(w) for w in args.context.split(",") if w.strip()]
    try:
        d = disambiguate(tax, word, context)
    except UnknownWordError as exc:
        raise DataError(str(exc).strip("'\"")) from None
    sys.stdout.write(d.to_tsv() + "\n")
    return EXIT_OK


def cmd_normalize(args) -> int:
    if args.side == "source":
        if not args.dict:
            raise UsageError("--side source needs --dict")
        heads = {normalize_lemma(s.headword) for s in _load_dict(args.dict, "dict")}
        resolved = resolve_complex(args.phrase, heads.__contains__, lemmatize_source)
    else:
        if not args.taxonomy:
            raise UsageError("--side target needs --taxonomy")
        tax = _load_taxonomy(args.taxonomy)
        resolved = resolve_complex(args.phrase, tax.has_lemma, lemmatize_target)
    sys.stdout.write(resolved.to_tsv() + "\n")
    return EXIT_OK


def cmd_stats(args) -> int:
    try:
        links = parse_links(_read(args.links))
    except ValueError as exc:
        raise DataError(f"{args.links}: {exc}") from None
    scopes = {}
    for method in sorted({m for l in links for m in l.methods}):
        scopes[method] = compute_stats(l for l in links if method in l.methods)
    scopes["total"] = compute_stats(links)
    if args.stats:
        _write(args.stats, format_stats(scopes))
    sys.stdout.write(render_stats_table(scopes))
    if args.plot:
        plot_merge_stats(scopes, args.plot)
    return EXIT_OK


def _finish(manifest: RunManifest, started: float, path: str | None) -> None:
    manifest.elapsed_seconds = round(time.perf_counter() - started, 6)
    if path:
        manifest.write(path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexlink",
        description="Link bilingual dictionary nouns to taxonomy synsets.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("link", help="run the per-subentry pipeline (mono, multi, cue)")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--dict", required=True, help="source->target dictionary TSV")
    p.add_argument("--max-cue-senses", type=int, default=5)
    p.add_argument("--multi-heuristic", action="store_true",
                   help="also skip multi-translation words with too many senses")
    p.add_argument("--out", help="link file (default stdout)")
    p.add_argument("--report", help="write the coverage table here")
    p.add_argument("--plot", help="write a bar chart of the coverage table")
    p.add_argument("--manifest", help="write a JSON run manifest")
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("merge", help="merge both dictionary directions and link by cases 1-4")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--dict-ab", required=True, help="target->source dictionary TSV")
    p.add_argument("--dict-ba", required=True, help="source->target dictionary TSV")
    p.add_argument("--cases", default="1,2,3,4")
    p.add_argument("--out", help="link file (default stdout)")
    p.add_argument("--stats", help="stats TSV")
    p.add_argument("--report", help="write the rendered tables here")
    p.add_argument("--plot", help="write a bar chart of the per-case stats")
    p.add_argument("--manifest", help="write a JSON run manifest")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("wsd", help="disambiguate one word against context words")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--context", default="")
    p.set_defaults(func=cmd_wsd)

    p = sub.add_parser("normalize", help="resolve a complex phrase to lemmas")
    p.add_argument("--phrase", required=True)
    p.add_argument("--side", choices=("target", "source"), default="target")
    p.add_argument("--taxonomy")
    p.add_argument("--dict")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("stats", help="statistics of an existing link file")
    p.add_argument("--links", required=True)
    p.add_argument("--stats", help="also write the stats TSV here")
    p.add_argument("--plot")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if getattr(args, "max_cue_senses", 1) < 1:
        parser.error("--max-cue-senses must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lexlink: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"lexlink: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

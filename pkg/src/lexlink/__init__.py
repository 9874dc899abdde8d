"""Link bilingual dictionary nouns to the synsets of a WordNet-style taxonomy."""

from lexlink.bidict import (
    CaseSet,
    EquivalencePair,
    MergedDictionary,
    Subentry,
    classify_subentry,
    coverage_report,
    merge_directions,
    parse_bidict,
)
from lexlink.density import Disambiguation, DensityScore, MarkSet, disambiguate, mark_senses, score_subtrees
from lexlink.linker import (
    CoverageReport,
    CueDictionary,
    LinkerConfig,
    MergeStats,
    SenseLink,
    compute_stats,
    merge_all,
    run_entry_pipeline,
)
from lexlink.normalizer import Normalizer, ResolvedPhrase, resolve_complex
from lexlink.taxonomy import Synset, TaxonomyIndex, load_taxonomy

__version__ = "0.1.0"

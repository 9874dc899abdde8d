import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexlink.density import (
    DensityScore,
    UnknownWordError,
    disambiguate,
    mark_senses,
    score_subtrees,
)
from lexlink.taxonomy import load_taxonomy
from oracles import brute_disambiguate, random_dag, to_index

CONTEXT = ["w1", "w2", "w3", "w4", "w5", "w6"]
SENSES = {"f010": "sense1", "f020": "sense2", "f030": "sense3", "f040": "sense4"}

# R at the top; A holds target sense a; B holds target sense b and two context senses.
TWO_SUBTREES = """\
R\troot\t
A\tgroup_a\tR
B\tgroup_b\tR
a\tt\tA
b\tt\tB
c1\tctx1\tB
c2\tctx2\tB
"""


def test_single_sense_empty_context():
    tax = load_taxonomy("x\tonly\t\n")
    ms = mark_senses(tax, "only", [])
    assert ms.marks == {"x": 1}
    assert score_subtrees(tax, ms) == [DensityScore("x", 1, 1)]


def test_absent_context_word_is_noop(four_tax):
    with_ghost = mark_senses(four_tax, "w", ["w1", "ghost"])
    without = mark_senses(four_tax, "w", ["w1"])
    assert with_ghost.marks == without.marks


def test_repeated_context_counted_once(four_tax):
    assert (mark_senses(four_tax, "w", ["w2", "w2", "w2"]).marks
            == mark_senses(four_tax, "w", ["w2"]).marks)


def test_unknown_target(four_tax):
    with pytest.raises(UnknownWordError):
        mark_senses(four_tax, "nope", [])


def test_four_subtrees_marks_per_subtree(four_tax):
    ms = mark_senses(four_tax, "w", CONTEXT)
    per_group = {}
    for group in ("f002", "f003", "f004", "f005"):
        below = four_tax.descendants(group)
        per_group[group] = sum(n for s, n in ms.marks.items() if s in below)
    # dots drawn per subtree in the fixture: W's sense plus its context senses
    assert per_group == {"f002": 2, "f003": 4, "f004": 2, "f005": 2}


def test_four_subtrees_sense2_wins(four_tax):
    ranking = score_subtrees(four_tax, mark_senses(four_tax, "w", CONTEXT))
    assert ranking[0].root == "f020"
    d = disambiguate(four_tax, "w", CONTEXT)
    assert [SENSES[s] for s in d.chosen_senses] == ["sense2"]


def test_two_subtree_table():
    tax = load_taxonomy(TWO_SUBTREES)
    ms = mark_senses(tax, "t", ["ctx1", "ctx2"])
    table = {s.root: (s.marks, s.subtree_size) for s in score_subtrees(tax, ms)}
    # worked out by hand: every ancestor of a or b is a candidate
    assert table == {"a": (1, 1), "b": (1, 1), "A": (1, 2), "B": (3, 4), "R": (4, 7)}
    ranking = [s.root for s in score_subtrees(tax, ms)]
    assert ranking == ["a", "b", "B", "R", "A"]


def test_two_senses_share_winning_subtree():
    text = "R\troot\t\nP\tparent\tR\ns1\tt\tP\ns2\tt\tP\nctx\tc,c2\tP\no\tt\tR\n"
    tax = load_taxonomy(text)
    d = disambiguate(tax, "t", ["c", "parent"])
    assert d.winning_root == "P"
    assert d.chosen_senses == ("s1", "s2")
    raw = {sid: (s.lemmas, tuple(s.hypernyms)) for sid, s in tax.synsets.items()}
    chosen, root, _, _ = brute_disambiguate(raw, "t", ["c", "parent"])
    assert (tuple(chosen), root) == (d.chosen_senses, d.winning_root)


def test_monosemous_target_forced():
    tax = load_taxonomy(TWO_SUBTREES)
    assert disambiguate(tax, "ctx1", ["t", "root"]).chosen_senses == ("c1",)


def test_density_is_exact():
    s = DensityScore("x", 1, 3)
    assert s.density == Fraction(1, 3)
    assert str(s) == "1/3"


def test_tsv_output(four_tax):
    assert disambiguate(four_tax, "w", CONTEXT).to_tsv() == "f020\tf020\t3/3"


def _random_case(rng):
    n = rng.randint(2, 200)
    raw = random_dag(rng, n, rng.randint(4, max(4, n // 2)))
    senses: dict[str, int] = {}
    for words, _ in raw.values():
        for w in words:
            senses[w] = senses.get(w, 0) + 1
    targets = [w for w, k in senses.items() if k <= 8]
    if targets:
        target = rng.choice(targets)
    else:
        target = "tgt"
        for sid in rng.sample(sorted(raw), min(len(raw), rng.randint(1, 8))):
            raw[sid] = (raw[sid][0] + ("tgt",), raw[sid][1])
        senses["tgt"] = 1
    lemmas = sorted(senses) + ["absent_word"]
    context = [rng.choice(lemmas) for _ in range(rng.randint(0, 10))]
    return raw, target, context


def test_oracle_agreement_sample():
    rng = random.Random(7)
    for _ in range(200):
        raw, target, context = _random_case(rng)
        d = disambiguate(to_index(raw), target, context)
        chosen, root, marks, size = brute_disambiguate(raw, target, context)
        assert (list(d.chosen_senses), d.winning_root) == (chosen, root)
        assert (d.score.marks, d.score.subtree_size) == (marks, size)


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_chosen_are_target_senses_under_root(seed):
    raw, target, context = _random_case(random.Random(seed))
    tax = to_index(raw)
    d = disambiguate(tax, target, context)
    assert d.chosen_senses
    assert set(d.chosen_senses) <= set(tax.senses_of(target))
    assert all(s in tax.descendants(d.winning_root) for s in d.chosen_senses)


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 10**6), extra=st.integers(0, 39))
def test_adding_context_never_lowers_marks(seed, extra):
    rng = random.Random(seed)
    raw, target, context = _random_case(rng)
    tax = to_index(raw)
    before = mark_senses(tax, target, context).marks
    after = mark_senses(tax, target, context + [f"l{extra}"]).marks
    assert all(after.get(s, 0) >= n for s, n in before.items())


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_duplicating_context_keeps_ranking(seed):
    raw, target, context = _random_case(random.Random(seed))
    tax = to_index(raw)
    once = score_subtrees(tax, mark_senses(tax, target, context))
    twice = score_subtrees(tax, mark_senses(tax, target, context * 2))
    assert once == twice


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_empty_context_deterministic(seed):
    raw, target, _ = _random_case(random.Random(seed))
    tax = to_index(raw)
    assert disambiguate(tax, target, []) == disambiguate(tax, target, [])


def test_equal_cross_products_order_by_tie_chain():
    # 1/3 and 2/6 are the same density; more marks wins before size is considered
    a, b = DensityScore("a", 1, 3), DensityScore("b", 2, 6)
    assert sorted([a, b], key=DensityScore.sort_key) == [b, a]
    c = DensityScore("c", 2, 6)
    assert sorted([c, b], key=DensityScore.sort_key) == [b, c]

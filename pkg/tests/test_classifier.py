import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import balanced_pairs
from linkweave.classifier import (
    NO,
    UNKNOWN,
    YES,
    classify,
    lk_candidates,
    splitting_lower_bound_check,
    torus_verdict,
)
from linkweave.diagram import linking_number
from linkweave.synthesizer import synthesize
from linkweave.templates import flip_bigons, torus_minimal
from linkweave.words import WordError, WordPair, count, is_well_balanced

FAMILY_FIELDS = ("trivial", "hopf", "solomon", "whitehead", "split", "nonsplit")


def test_whitehead_pair():
    r = classify(WordPair.parse("OUOU,OOUU"))
    assert (r.trivial, r.hopf, r.solomon, r.whitehead) == (YES, NO, YES, YES)
    assert r.parity_class == "even" and r.realizable_any


def test_hopf_pair_with_torus_queries():
    r = classify(WordPair.parse("OU,OU"), {1, 2})
    assert r.hopf == YES and r.torus == {1: YES, 2: NO}


def test_counts_force_solomon_no():
    r = classify(WordPair.parse("UU,OO"))
    assert r.trivial == YES and r.solomon == NO and r.whitehead == NO


def test_empty_pair_is_trivial_family():
    r = classify(WordPair.parse(","))
    assert r.trivial == r.split == YES and r.nonsplit == NO
    assert r.lk_candidates == {0}


def test_unbalanced_pair_is_not_realizable():
    r = classify(WordPair.parse("OU,OO"))
    assert not r.realizable_any and r.parity_class == "not-realizable"
    assert r.lk_candidates == frozenset()
    assert all(getattr(r, f) == NO for f in FAMILY_FIELDS)


def test_report_json_uses_plain_field_names():
    data = json.loads(classify(WordPair.parse("OUOU,OUOU"), [2, 4]).dumps())
    assert data["lk_candidates"] == [-2, 0, 2]
    assert data["torus"] == {"2": YES, "4": NO}
    assert set(data) >= set(FAMILY_FIELDS) | {"realizable_any", "parity_class"}


# --- linking number candidates ---------------------------------------------------


def test_lk_candidates_examples():
    assert lk_candidates(WordPair.of("OUOOUUUU", "OOOOOUUU")) == {-3, -1, 1, 3}
    assert lk_candidates(WordPair.of("", "")) == {0}
    assert lk_candidates(WordPair.of("OUOU", "OUOU")) == {-2, 0, 2}


def test_every_candidate_of_the_alternating_pair_is_realized():
    # flips of the minimal (2,4) torus diagram keep the words and walk lk by 2
    realized = {linking_number(flip_bigons(torus_minimal(2), list(range(j)))) for j in range(3)}
    assert realized == set(lk_candidates(WordPair.of("OUOU", "OUOU")))


def test_lk_candidates_rejects_unbalanced():
    with pytest.raises(WordError):
        lk_candidates(WordPair.of("OU", "OO"))


# --- splitting number ------------------------------------------------------------


def test_splitting_bound_examples():
    assert not splitting_lower_bound_check(WordPair.of("OOUU", "OOUU"), 3)
    assert splitting_lower_bound_check(WordPair.of("OU", "OU"), 0)
    assert splitting_lower_bound_check(WordPair.of("OUOUOUOUOU", "OUOUOUOUOU"), 5)
    with pytest.raises(WordError):
        splitting_lower_bound_check(WordPair.of("OO", "OO"), 1)


# --- torus ------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 6))
def test_torus_witness_and_bound(n):
    w = "OU" * n
    p = WordPair.of(w, w)
    for m in range(n + 1, 7):
        assert classify(p, {n, m}).torus == {n: YES, m: NO}


def test_torus_parity_and_unknown():
    p = WordPair.of("OOUU", "OOUU")
    assert torus_verdict(p, 1) == NO  # parity
    assert torus_verdict(p, 2) == UNKNOWN
    with pytest.raises(ValueError):
        torus_verdict(p, 0)


# --- laws ---------------------------------------------------------------------------


def all_pairs(max_len):
    for n in range(0, max_len + 1, 2):
        words = ["".join(t) for t in itertools.product("OU", repeat=n)]
        for w1, w2 in itertools.product(words, words):
            yield WordPair.of(w1, w2)


def test_partition_and_implication_laws_exhaustive():
    for p in all_pairs(6):
        r = classify(p)
        assert r.realizable_any == is_well_balanced(p)
        assert (not r.lk_candidates) == (not r.realizable_any)
        if r.realizable_any:
            assert [r.trivial, r.hopf].count(YES) == 1
            assert r.split == r.trivial
        if r.solomon == YES:
            assert r.trivial == YES
        assert UNKNOWN not in {getattr(r, f) for f in FAMILY_FIELDS}


@settings(max_examples=30, deadline=None)
@given(balanced_pairs(max_half=3, min_half=1), st.sampled_from(["trivial", "hopf", "solomon", "whitehead"]))
def test_synthesized_families_are_reported_yes(p, family):
    r = classify(p)
    if r.verdict(family) != YES:
        return
    d = synthesize(p, family)
    assert linking_number(d) in r.lk_candidates
    o, _ = count(p.w1)
    assert (linking_number(d) - o) % 2 == 0

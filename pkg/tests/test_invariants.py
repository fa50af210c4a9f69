import pytest

from conftest import FIXTURES, load
from linkweave.diagram import PlanarDiagram, two_circles
from linkweave.invariants import (
    CATALOG_NAMES,
    CrossingCapExceeded,
    catalog_self_check,
    catalog_values,
    kauffman_bracket,
    normalized_invariant,
    reference_diagram,
    same_link_proxy,
)
from linkweave.laurent import DELTA, LaurentPolynomial
from linkweave.templates import closed_braid, torus_minimal

from oracles import bracket_from_pd, writhe_normalized

ORACLE_LIMIT = 14


def crossingless_components(d: PlanarDiagram) -> int:
    touched = {d.he_comp[h] for v in d.crossings for h in d.rot[v]}
    present = {d.he_comp[h] for h in d.half_edges()} - {0}
    return len(d.loops) + len(present - touched)


def oracle_invariant(d: PlanarDiagram) -> LaurentPolynomial:
    bracket = bracket_from_pd(d.pd_text(), crossingless_components(d))
    if not d.crossings:
        bracket = DELTA ** (crossingless_components(d) - 1)
    return writhe_normalized(bracket, d.writhe())


def small_fixtures():
    for path in sorted(FIXTURES.glob("*.json")):
        d = load(path.stem)
        if len(d.crossings) <= ORACLE_LIMIT:
            yield path.stem


@pytest.mark.parametrize("name", list(small_fixtures()))
def test_bracket_agrees_with_state_sum_oracle(name):
    d = load(name)
    assert normalized_invariant(d) == oracle_invariant(d)


@pytest.mark.parametrize("word,strands", [([1, 1], 2), ([1, -2, 1, -2, -2], 3), ([1, 1, 1, 1], 2), ([1, 2, 2, 1, 2], 3)])
def test_braid_closures_agree_with_oracle(word, strands):
    d = closed_braid(word, strands)
    assert kauffman_bracket(d) == bracket_from_pd(d.pd_text(), crossingless_components(d))


def test_unlink_value():
    assert kauffman_bracket(two_circles()) == DELTA
    assert same_link_proxy(two_circles(), "unlink2")


def test_hopf_bracket_value():
    # frozen from the state-sum oracle
    assert kauffman_bracket(torus_minimal(1)) == LaurentPolynomial({4: -1, -4: -1})


def test_split_union_multiplies_by_delta():
    # one kinked circle next to a separate round circle
    d = closed_braid([1], 3)
    kink = LaurentPolynomial.monomial(3, -1)
    assert crossingless_components(d) == 1
    assert kauffman_bracket(d) == kink * DELTA
    assert normalized_invariant(d) == DELTA
    assert same_link_proxy(d, "unlink2")


def test_catalog_entries_are_distinct():
    catalog_self_check()
    for name in CATALOG_NAMES:
        assert catalog_values(name)


def test_mirror_and_reversal_do_not_change_the_verdict():
    d = load("whitehead_mixed")
    for dd in (d, d.mirrored(), d.reversed(2), d.mirrored().reversed(1)):
        assert same_link_proxy(dd, "whitehead")


@pytest.mark.parametrize(
    "fixture,name",
    [
        ("hopf_minimal", "hopf"),
        ("whitehead_mixed", "whitehead"),
        ("t26_alternating", "torus(2,6)"),
        ("t26_mixed", "torus(2,6)"),
        ("t26_blocks", "torus(2,6)"),
        ("unlink_ouuo_ouou", "unlink2"),
        ("unlink_example_a1", "unlink2"),
        ("torus_minimal_5", "torus(2,10)"),
    ],
)
def test_fixture_link_types(fixture, name):
    assert same_link_proxy(load(fixture), name)


def test_distinct_links_are_told_apart():
    assert not same_link_proxy(load("hopf_minimal"), "unlink2")
    assert not same_link_proxy(load("whitehead_mixed"), "unlink2")
    assert not same_link_proxy(reference_diagram("solomon"), "hopf")


def test_crossing_cap_is_enforced():
    d = torus_minimal(5)
    with pytest.raises(CrossingCapExceeded):
        kauffman_bracket(d, cap=4)
    kauffman_bracket(d, cap=10)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("LINKWEAVE_CAP", "3")
    with pytest.raises(CrossingCapExceeded):
        normalized_invariant(torus_minimal(2))


def test_cores_match_their_catalog_entries():
    from linkweave.synthesizer import expand_template, synth_hopf
    from linkweave.words import WordPair

    assert normalized_invariant(expand_template("A", 1)) in catalog_values("unlink2")
    assert normalized_invariant(expand_template("B", 0)) in catalog_values("hopf")
    assert same_link_proxy(expand_template("Da", 0), "solomon")
    assert same_link_proxy(torus_minimal(2), "solomon")
    assert not same_link_proxy(synth_hopf(WordPair.parse("OOOUUU,OOOUUU")), "unlink2")


def test_unknown_catalog_name():
    with pytest.raises(KeyError):
        same_link_proxy(torus_minimal(1), "trefoil")

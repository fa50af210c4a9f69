import pytest
from hypothesis import given, settings

from conftest import balanced_pairs, load
from linkweave.diagram import (
    DiagramError,
    component_phi,
    extract_nonself_ou,
    linking_number,
    self_crossing_census,
    validate,
)
from linkweave.invariants import same_link_proxy
from linkweave.synthesizer import (
    PreconditionError,
    construction1,
    construction2,
    expand_template,
    synth_hopf,
    synth_solomon,
    synth_trivial,
    synth_whitehead,
    synthesize,
    weave,
)
from linkweave.templates import bigon_flip, find_bigons, flip_bigons, torus_minimal
from linkweave.words import CyclicWord, MarkedWord, WordPair, count, is_alternating, phi_cyclic

LINK = {"A": "unlink2", "B": "hopf", "C": "solomon", "D": "whitehead"}
LK = {"A": {0}, "B": {-1, 1}, "C": {-2, 2}, "D": {0}}
OFFSET = {"A": 0, "B": 2, "C": 4, "D": 4}


def words(d):
    return extract_nonself_ou(d)


# --- templates -------------------------------------------------------------------


@pytest.mark.parametrize("kind,n", [(k, n) for k in "ABCD" for n in range(3)])
def test_core_template_contract(kind, n):
    d = expand_template(kind, n)
    assert validate(d) == [] and not d.markers
    w1, w2 = words(d).w1.word, words(d).w2.word
    assert len(w1) == len(w2) == 4 * n + OFFSET[kind]
    assert is_alternating(w1) and is_alternating(w2)
    assert linking_number(d) in LK[kind]
    assert same_link_proxy(d, LINK[kind])


@pytest.mark.parametrize(
    "kind,pair,link",
    [
        ("Da", "UOOU,OUUO", "solomon"),
        ("Db", "UOOU,OUOU", "solomon"),
        ("DaPrime", "UOOU,OUUO", "whitehead"),
        ("DbPrime", "UOOU,OUOU", "whitehead"),
    ],
)
def test_phi_zero_core_templates(kind, pair, link):
    d = expand_template(kind, 0)
    assert validate(d) == []
    assert words(d) == WordPair.parse(pair)
    assert same_link_proxy(d, link)


@pytest.mark.parametrize("n", range(1, 6))
def test_torus_minimal_template(n):
    d = expand_template("TorusMinimal", n)
    assert len(d.crossings) == 2 * n
    assert words(d) == WordPair.of("OU" * n, "OU" * n)
    assert linking_number(d) == -n
    assert same_link_proxy(d, f"torus(2,{2 * n})")


def test_template_examples():
    assert words(expand_template("A", 1)) == WordPair.of("OUOU", "OUOU")
    assert linking_number(expand_template("A", 1)) == 0
    b0 = expand_template("B", 0)
    assert len(b0.crossings) == 2 and words(b0) == WordPair.of("OU", "OU")
    assert linking_number(expand_template("TorusMinimal", 5)) == -5


@pytest.mark.parametrize("kind,n", [("A", -1), ("TorusMinimal", 0), ("E", 1)])
def test_template_bad_parameters(kind, n):
    with pytest.raises(DiagramError):
        expand_template(kind, n)


# --- bigon flip -----------------------------------------------------------------


@pytest.mark.parametrize("m", range(1, 7))
def test_each_bigon_flip_adds_two_and_keeps_words(m):
    d = torus_minimal(m)
    bigons = find_bigons(d)
    assert bigons
    for bg in bigons:
        out = bigon_flip(d, bg.face)
        assert validate(out) == []
        assert words(out) == words(d)
        assert linking_number(out) == linking_number(d) + 2


@pytest.mark.parametrize("m", range(1, 7))
def test_composed_flips_realize_every_linking_number(m):
    d = torus_minimal(m)
    for n in range(-m, m + 1, 2):
        out = flip_bigons(d, list(range((m + n) // 2)))
        assert words(out) == WordPair.of("OU" * m, "OU" * m)
        assert linking_number(out) == n


def test_flip_examples():
    assert linking_number(flip_bigons(torus_minimal(5), [0])) == -3
    assert linking_number(flip_bigons(torus_minimal(1), [0])) == 1


def test_flip_rejects_ineligible_face():
    d = torus_minimal(2)
    eligible = {b.face for b in find_bigons(d)}
    faces, _ = d.faces()
    other = next(i for i in range(len(faces)) if i not in eligible)
    with pytest.raises(DiagramError):
        bigon_flip(d, other)


# --- constructions ---------------------------------------------------------------


def test_construction1_example():
    p = WordPair.parse("OOUOOU,OUUUOU")
    d = construction1(p)
    assert words(d) == p
    k1, k2 = self_crossing_census(d)
    assert k1 == 0 and k2 >= 1
    assert abs(linking_number(d)) == 2


def test_construction2_example():
    p = WordPair.parse("OOUOOU,OUUUOU")
    d = construction2(p)
    assert words(d) == p
    k1, k2 = self_crossing_census(d)
    assert k1 >= 1 and k2 == 0
    # OOUOOU reduces to the empty word, so the linking number vanishes
    assert phi_cyclic("OOUOOU") == 0
    assert linking_number(d) == 0
    assert abs(linking_number(construction2(WordPair.of("OUOU", "OUOU")))) == 2


@pytest.mark.parametrize("build", [construction1, construction2])
def test_constructions_of_empty_pair(build):
    d = build(WordPair.of("", ""))
    assert not d.crossings and len(d.loops) == 2


@pytest.mark.parametrize("build", [construction1, construction2])
def test_constructions_reject_unbalanced(build):
    with pytest.raises((ValueError, DiagramError)):
        build(WordPair.of("OU", "OO"))


# --- weave ----------------------------------------------------------------------


def test_weave_worked_example_on_a1():
    s1 = MarkedWord("OUOUUOOU", (None, None, None, None, 2, 1, 1, 2), ((0, 1), (2, 3)), tuple(range(1, 9)))
    s2 = MarkedWord("OUOUOUOU", (None, None, 2, 1, None, None, 2, 1), ((0, 1), (4, 5)), tuple(range(1, 9)))
    s1.check()
    s2.check()
    log = []
    d = weave(expand_template("A", 1), s1, s2, log)
    assert words(d) == WordPair.of("OUOUUOOU", "OUOUOUOU")
    assert not d.markers and validate(d) == []
    assert len(log) == 2
    assert same_link_proxy(d, "unlink2")


def test_weave_with_nothing_to_place_keeps_the_core():
    core = expand_template("A", 1)
    s = MarkedWord("OUOU", (None,) * 4, ((0, 1), (2, 3)), (1, 2, 3, 4))
    d = weave(core, s, s)
    assert len(d.crossings) == len(core.crossings)
    assert words(d) == words(core)


def test_example_with_empty_core():
    prov = []
    p = WordPair.parse("OUUO,OUOU")
    d = synth_trivial(p, prov)
    assert words(d) == p and linking_number(d) == 0
    assert same_link_proxy(d, "unlink2")
    assert prov[0].core == "A" and prov[0].core_parameter == 0
    assert prov[0].s1 == "O1^2 U2^1 U3^1 O4^2"


# --- family pipelines -------------------------------------------------------------


def test_trivial_worked_example():
    p = WordPair.parse("OOUOUOUU,OUOUOUOU")
    d = synth_trivial(p)
    assert words(d) == p and same_link_proxy(d, "unlink2")


def test_alternating_pairs_use_plain_cores():
    for w, kind, synth in (("OUOU", "A", synth_trivial), ("OUOUOU", "B", synth_hopf)):
        prov = []
        d = synth(WordPair.of(w, w), prov)
        assert prov[0].core == kind and prov[0].surgeries == []
        assert words(d) == WordPair.of(w, w)


def test_hopf_examples():
    for pair in ("OU,OU", "OOOUUU,OOOUUU"):
        d = synth_hopf(WordPair.parse(pair))
        assert words(d) == WordPair.parse(pair)
        assert same_link_proxy(d, "hopf") and abs(linking_number(d)) == 1


def test_phi_zero_pair_gives_exact_template():
    d = synth_solomon(WordPair.parse("UOOU,OUUO"))
    assert d.to_json() == expand_template("Da", 0).to_json()
    d = synth_whitehead(WordPair.parse("UOOU,OUUO"))
    assert same_link_proxy(d, "whitehead")


def test_whitehead_and_solomon_examples():
    d = synth_whitehead(WordPair.parse("OUOU,OOUU"))
    assert words(d) == WordPair.parse("OUOU,OOUU") and same_link_proxy(d, "whitehead")
    d = synth_solomon(WordPair.parse("OOUU,OUOU"))
    assert words(d) == WordPair.parse("OOUU,OUOU") and same_link_proxy(d, "solomon")


def test_preconditions_are_enforced():
    with pytest.raises(PreconditionError):
        synth_trivial(WordPair.parse("OU,OU"))
    with pytest.raises(PreconditionError):
        synth_hopf(WordPair.parse("OUOU,OUOU"))
    with pytest.raises(PreconditionError):
        synth_solomon(WordPair.parse("OOOO,UUUU"))
    with pytest.raises(PreconditionError):
        synth_whitehead(WordPair.parse("OU,OO"))


def test_provenance_records_the_core():
    prov = []
    synthesize(WordPair.parse("OOUOUOUU,OUOUOUOU"), "any", prov)
    rec = prov[0].to_json()
    assert rec["family"] == "trivial" and rec["core"] == "A"
    assert isinstance(rec["surgeries"], list)


@settings(max_examples=40, deadline=None)
@given(balanced_pairs(max_half=3, min_half=1))
def test_synthesized_diagrams_realize_the_pair_and_family(p):
    o, u = count(p.w1)
    families = ["hopf"] if o % 2 else ["trivial"] + (["solomon", "whitehead"] if o >= 2 and u >= 2 else [])
    forced = {"trivial": {0}, "hopf": {-1, 1}, "solomon": {-2, 2}, "whitehead": {0}}
    name = {"trivial": "unlink2", "hopf": "hopf", "solomon": "solomon", "whitehead": "whitehead"}
    for fam in families:
        d = synthesize(p, fam)
        assert validate(d) == [] and not d.markers
        assert words(d) == p
        assert linking_number(d) in forced[fam]
        assert same_link_proxy(d, name[fam])
        if phi_cyclic(p.w1.word) != phi_cyclic(p.w2.word):
            assert self_crossing_census(d) != (0, 0)


def test_fixture_construction_outputs_match_relations():
    for name, other in (("construction1_example", "OUUUOU"), ("construction2_example", "OOUOOU")):
        d = load(name)
        assert abs(linking_number(d)) == phi_cyclic(other)
        assert CyclicWord(d.words()[0]) == CyclicWord("OOUOOU")
        assert component_phi(d, 1) >= 0

"""Write the golden diagram fixtures used by the test-suite.

Every diagram is checked against its expected non-self words, linking number
and link type before it is written, so a fixture on disk is never unverified.
Run from the repository root:  python3 scripts/build_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from linkweave.diagram import PlanarDiagram, linking_number, self_crossing_census
from linkweave.invariants import same_link_proxy
from linkweave.synthesizer import construction1, construction2, expand_template, synthesize
from linkweave.templates import closed_braid, torus_minimal
from linkweave.words import CyclicWord, WordPair

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def _check(name, d: PlanarDiagram, words, link, lk=None, census=None):
    d.require_valid(allow_markers=False)
    got = tuple(CyclicWord(w) for w in d.words())
    want = tuple(CyclicWord(w) for w in words)
    assert got == want, (name, d.words(), words)
    if lk is not None:
        assert linking_number(d) == lk, (name, linking_number(d), lk)
    if census is not None:
        assert self_crossing_census(d) == census, (name, self_crossing_census(d))
    if link is not None:
        assert same_link_proxy(d, link, cap=64), (name, link)
    (OUT / f"{name}.json").write_text(json.dumps(d.to_json(), indent=1, sort_keys=True) + "\n")
    print(f"{name:28s} {len(d.crossings):3d} crossings  words={d.words()}  lk={linking_number(d)}")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    pair = WordPair.parse("OOUOOU,OUUUOU")

    _check("hopf_minimal", torus_minimal(1), ("OU", "OU"), "hopf", lk=-1, census=(0, 0))
    _check("whitehead_mixed", closed_braid([1, -2, 1, -2, -2], 3).relabeled({1: 2, 2: 1}),
           ("OUOU", "OOUU"), "whitehead", lk=0, census=(0, 1))
    _check("construction1_example", construction1(pair), (pair.w1.word, pair.w2.word), None)
    _check("construction2_example", construction2(pair), (pair.w1.word, pair.w2.word), None)

    d = construction1(pair)
    if linking_number(d) != -2:
        d = d.reversed(2)
    _check("linking_minus_two", d, (pair.w1.word, pair.w2.word), None, lk=-2)

    _check("torus_minimal_5", torus_minimal(5), ("OU" * 5, "OU" * 5), "torus(2,10)", lk=-5)
    _check("t26_alternating", torus_minimal(3), ("OUOUOU", "OUOUOU"), "torus(2,6)", lk=-3)
    for name, words in (("mixed_t26", ("OOOUUU", "OUOUOU")), ("blocks_t26", ("OOOUUU", "OOOUUU"))):
        text = (OUT.parent.parent / "src" / "linkweave" / "data" / f"{name}.json").read_text()
        target = "t26_mixed" if name == "mixed_t26" else "t26_blocks"
        _check(target, PlanarDiagram.from_json(json.loads(text)), words, "torus(2,6)", lk=-3)

    for kind, n, link, lk in (("A", 1, "unlink2", 0), ("B", 1, "hopf", -1),
                              ("C", 1, "solomon", -2), ("D", 1, "whitehead", 0)):
        d = expand_template(kind, n)
        length = {"A": 4 * n, "B": 4 * n + 2, "C": 4 * n + 4, "D": 4 * n + 4}[kind]
        alt = "OU" * (length // 2)
        _check(f"core_{kind}{n}", d, (alt, alt), link, lk=lk)
    for kind, words, link in (("Da", ("UOOU", "OUUO"), "solomon"), ("Db", ("UOOU", "OUOU"), "solomon"),
                              ("DaPrime", ("UOOU", "OUUO"), "whitehead"),
                              ("DbPrime", ("UOOU", "OUOU"), "whitehead")):
        _check(f"core_{kind}", expand_template(kind, 0), words, link)

    _check("unlink_ouuo_ouou", synthesize(WordPair.parse("OUUO,OUOU"), "trivial"),
           ("OUUO", "OUOU"), "unlink2", lk=0)
    _check("unlink_example_a1", synthesize(WordPair.parse("OOUOUOUU,OUOUOUOU"), "trivial"),
           ("OOUOUOUU", "OUOUOUOU"), "unlink2", lk=0)


if __name__ == "__main__":
    main()

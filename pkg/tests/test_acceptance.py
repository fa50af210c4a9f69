"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import itertools
import time
from functools import lru_cache

from conftest import load
from linkweave.classifier import classify, lk_candidates
from linkweave.diagram import (
    component_phi,
    extract_nonself_ou,
    linking_number,
    self_crossing_census,
)
from linkweave.invariants import same_link_proxy
from linkweave.synthesizer import construction1, construction2, synthesize
from linkweave.templates import bigon_flip, find_bigons, flip_bigons, torus_minimal
from linkweave.words import (
    WordPair,
    canonical_rotation,
    count,
    is_well_balanced,
    phi_cyclic,
)

from oracles import is_alternating_cyclic, phi_by_definition, rotations

CAP = 24
ORACLE = {"trivial": "unlink2", "hopf": "hopf", "solomon": "solomon", "whitehead": "whitehead"}
FORCED_LK = {"trivial": {0}, "hopf": {-1, 1}, "solomon": {-2, 2}, "whitehead": {0}}


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    assert ok, detail


def canonical_pairs(max_len):
    for n in range(0, max_len + 1, 2):
        words = sorted({canonical_rotation("".join(t)) for t in itertools.product("OU", repeat=n)})
        for w1, w2 in itertools.product(words, words):
            yield WordPair.of(w1, w2)


@lru_cache(maxsize=None)
def sweep_one():
    """Classify every pair up to length 8 and build construction 1 for the realizable ones."""
    start = time.perf_counter()
    total, failures, built = 0, [], []
    for p in canonical_pairs(8):
        total += 1
        r = classify(p)
        if r.realizable_any != is_well_balanced(p):
            failures.append(f"{p}: classify disagrees with balance")
        if not r.realizable_any:
            continue
        d = construction1(p)
        if extract_nonself_ou(d) != p:
            failures.append(f"{p}: construction 1 does not round-trip")
        built.append((p, d))
    return total, failures, built, time.perf_counter() - start


def family_sweep(families, max_len):
    checked, failures = 0, []
    for p in canonical_pairs(max_len):
        if not is_well_balanced(p):
            continue
        o, u = count(p.w1)
        for fam in families:
            if fam == "trivial" and o % 2:
                continue
            if fam == "hopf" and o % 2 == 0:
                continue
            if fam in ("solomon", "whitehead") and (o % 2 or o < 2 or u < 2):
                continue
            checked += 1
            d = synthesize(p, fam)
            if extract_nonself_ou(d) != p:
                failures.append(f"{fam} {p}: words differ")
            elif linking_number(d) not in FORCED_LK[fam]:
                failures.append(f"{fam} {p}: lk {linking_number(d)}")
            elif not same_link_proxy(d, ORACLE[fam], cap=CAP):
                failures.append(f"{fam} {p}: link type")
    return checked, failures


def test_criterion_1_realizability_sweep(capsys):
    total, failures, built, seconds = sweep_one()
    ok = not failures and seconds < 60
    report(capsys, 1, ok, f"{total} pairs, {len(built)} realizable, {len(failures)} failures, {seconds:.1f}s")


def test_criterion_2_unlink_sweep(capsys):
    start = time.perf_counter()
    checked, failures = family_sweep(["trivial"], 6)
    seconds = time.perf_counter() - start
    ok = not failures and seconds < 300
    report(capsys, 2, ok, f"{checked} trivial pairs, {len(failures)} failures, {seconds:.1f}s {failures[:3]}")


def test_criterion_3_hopf_solomon_whitehead_sweep(capsys):
    checked, failures = family_sweep(["hopf", "solomon", "whitehead"], 6)
    report(capsys, 3, not failures, f"{checked} syntheses, {len(failures)} failures {failures[:3]}")


def test_criterion_4_torus_witness(capsys):
    bad = []
    for n in range(1, 6):
        w = "OU" * n
        for m in range(n + 1, 7):
            torus = classify(WordPair.of(w, w), {n, m}).torus
            if torus != {n: "yes", m: "no"}:
                bad.append((n, m, torus))
    report(capsys, 4, not bad, f"alternating witnesses n < m <= 6, mismatches {bad}")


def test_criterion_5_linking_number_closure(capsys):
    _, _, built, _ = sweep_one()
    bad = []
    for p, d in built:
        lk = linking_number(d)
        o = count(p.w1)[0]
        if abs(lk) != phi_cyclic(p.w2.word) or lk not in lk_candidates(p) or (lk - o) % 2:
            bad.append((str(p), lk))
    report(capsys, 5, not bad, f"{len(built)} construction-1 diagrams, {len(bad)} violations {bad[:3]}")


def test_criterion_6_bigon_flips(capsys):
    bad = []
    for m in range(1, 7):
        d = torus_minimal(m)
        for bg in find_bigons(d):
            out = bigon_flip(d, bg.face)
            if linking_number(out) != linking_number(d) + 2 or extract_nonself_ou(out) != extract_nonself_ou(d):
                bad.append(("flip", m, bg.face))
        for n in range(-m, m + 1, 2):
            out = flip_bigons(d, list(range((m + n) // 2)))
            if linking_number(out) != n or extract_nonself_ou(out) != extract_nonself_ou(d):
                bad.append(("compose", m, n))
    report(capsys, 6, not bad, f"torus minimal m <= 6, failures {bad}")


def test_criterion_7_golden_fixtures(capsys):
    checks = {
        "whitehead words": extract_nonself_ou(load("whitehead_mixed")) == WordPair.of("OUOU", "OOUU"),
        "whitehead type": same_link_proxy(load("whitehead_mixed"), "whitehead"),
        "lk -2": linking_number(load("linking_minus_two")) == -2 == -phi_cyclic("OUUUOU"),
        "D1 phi": (component_phi(load("t26_alternating"), 1), component_phi(load("t26_alternating"), 2)) == (3, 3),
        "D2 phi": (component_phi(load("t26_mixed"), 1), component_phi(load("t26_mixed"), 2)) == (1, 3),
        "D3 phi": (component_phi(load("t26_blocks"), 1), component_phi(load("t26_blocks"), 2)) == (1, 1),
        "lk -5": linking_number(load("torus_minimal_5")) == -5,
    }
    failed = [k for k, v in checks.items() if not v]
    report(capsys, 7, not failed, f"{len(checks)} golden checks, failed {failed}")


def test_criterion_8_phi_properties(capsys):
    start = time.perf_counter()
    bad = []
    for n in range(0, 13, 2):
        for t in itertools.product("OU", repeat=n):
            w = "".join(t)
            phi = phi_cyclic(w)
            if {abs(phi_by_definition(r)) for r in rotations(w)} != {phi}:
                bad.append((w, "rotation"))
            for i in range(n):
                j = (i + 1) % n
                if n >= 2 and w[i] == w[j]:
                    rest = "".join(w[k] for k in range(n) if k not in (i, j))
                    if phi_cyclic(rest) != phi:
                        bad.append((w, "reduction"))
            if phi > n // 2 or (phi == n // 2) != is_alternating_cyclic(w):
                bad.append((w, "bound"))
            if (phi - w.count("O")) % 2:
                bad.append((w, "parity"))
    seconds = time.perf_counter() - start
    report(capsys, 8, not bad and seconds < 10, f"all words up to length 12, {len(bad)} failures, {seconds:.1f}s")


def test_criterion_9_forced_self_crossings(capsys):
    _, _, built, _ = sweep_one()
    checked, bad = 0, []
    for p, d1 in built:
        if phi_cyclic(p.w1.word) == phi_cyclic(p.w2.word):
            continue
        diagrams = [d1, construction2(p)]
        o, u = count(p.w1)
        families = ["hopf"] if o % 2 else ["trivial"] + (["solomon", "whitehead"] if o >= 2 and u >= 2 else [])
        diagrams += [synthesize(p, fam) for fam in families]
        for d in diagrams:
            checked += 1
            if self_crossing_census(d) == (0, 0):
                bad.append(str(p))
    report(capsys, 9, not bad, f"{checked} diagrams with unequal phi, {len(bad)} without self-crossings")

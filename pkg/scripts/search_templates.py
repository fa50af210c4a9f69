"""Random search for small diagrams with prescribed non-self OU words.

Walks through diagrams of a fixed link type using overpass moves: a stretch of
one component that is over (or under) at every crossing it meets is erased and
redrawn along a random face path, over (or under) everything it crosses.  Such
a move is an isotopy, so the link type never changes.  The diagrams found are
checked with the bracket oracle and written as PD JSON fixtures.

Usage: python scripts/search_templates.py [--seed N] [--out DIR]
"""

from __future__ import annotations

import argparse
import json
import random
from pathlib import Path

from linkweave.diagram import PlanarDiagram, linking_number, self_crossing_census
from linkweave.invariants import reference_diagram, same_link_proxy
from linkweave.routing import draw_route, random_route
from linkweave.words import CyclicWord


def overpass_move(d: PlanarDiagram, rng: random.Random, max_edges: int = 3):
    d = d.copy()
    comp = rng.choice([c for c in (1, 2) if d.strand(c)])
    strand = d.strand(comp)
    n = len(strand)
    i = rng.randrange(n)
    length = rng.randint(1, min(max_edges, n))
    edges = [strand[(i + k) % n] for k in range(length)]
    over = rng.random() < 0.5
    interior = []
    for h in edges[:-1]:
        t = d.twin[h]
        v = d.he_vertex[t]
        if d.kind[v] != "X" or v in interior:
            return None
        if (d.rot[v].index(t) % 2 == d.over[v]) != over:
            return None
        interior.append(v)
    first, last = edges[0], edges[-1]
    p = d.subdivide(first)
    p_out = d.rot[p][1]
    if length == 1:
        last = p_out
    q = d.subdivide(last)
    # erase the stretch from p to q
    h = p_out
    doomed = []
    while True:
        doomed.append(h)
        t = d.twin[h]
        v = d.he_vertex[t]
        if v == q:
            break
        h = d.strand_partner(t)
    for h in doomed:
        d.delete_edge(h)
    for v in interior:
        d.dissolve(v)
    if len(d.graph_components()) != 1:
        return None
    route = random_route(d, d.rot[p][0], [d.rot[q][0]], lambda h: True, rng)
    if route is None:
        return None
    draw_route(d, route, comp, over)
    d.dissolve(p)
    d.dissolve(q)
    if d.validate():
        return None
    return d


def normalize_words(w1: str, w2: str):
    """All (w1, w2) forms reachable by reversing components, mirroring and swapping."""
    forms = {}
    flip = str.maketrans("OU", "UO")
    for swap in (False, True):
        for r1 in (False, True):
            for r2 in (False, True):
                for mirror in (False, True):
                    a, b = (w2, w1) if swap else (w1, w2)
                    a = a[::-1] if r1 else a
                    b = b[::-1] if r2 else b
                    if mirror:
                        a, b = a.translate(flip), b.translate(flip)
                    key = (CyclicWord(a).canonical, CyclicWord(b).canonical)
                    forms.setdefault(key, (swap, r1, r2, mirror))
    return forms


def apply_symmetry(d: PlanarDiagram, sym) -> PlanarDiagram:
    swap, r1, r2, mirror = sym
    # the symmetry maps d's words to the target; undo it on the diagram
    if swap:
        d = d.relabeled({1: 2, 2: 1})
    if r1:
        d = d.reversed(1)
    if r2:
        d = d.reversed(2)
    if mirror:
        d = d.mirrored()
    return d


def search(link: str, target: tuple[str, str], rng: random.Random, steps: int = 200000,
           max_crossings: int = 9, start: PlanarDiagram | None = None, census=None):
    want = (CyclicWord(target[0]).canonical, CyclicWord(target[1]).canonical)
    base = start if start is not None else reference_diagram(link)
    d = base
    for step in range(steps):
        if step % 200 == 0:
            d = base
        nxt = overpass_move(d, rng)
        if nxt is None or len(nxt.crossings) > max_crossings:
            continue
        d = nxt
        w1, w2 = d.words()
        forms = normalize_words(w1, w2)
        if want in forms:
            cand = apply_symmetry(d, forms[want])
            cw = cand.words()
            if (CyclicWord(cw[0]), CyclicWord(cw[1])) != (CyclicWord(target[0]), CyclicWord(target[1])):
                continue
            if census is not None and not census(self_crossing_census(cand)):
                continue
            if same_link_proxy(cand, link):
                return cand
    return None


TARGETS = {
    "Da": ("solomon", ("UOOU", "OUUO"), None),
    "Db": ("solomon", ("UOOU", "OUOU"), None),
    "DaPrime": ("whitehead", ("UOOU", "OUUO"), None),
    "mixed_t26": ("torus(2,6)", ("OOOUUU", "OUOUOU"), None),
    "blocks_t26": ("torus(2,6)", ("OOOUUU", "OOOUUU"), None),
}


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out", default="src/linkweave/data")
    ap.add_argument("--only", nargs="*")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, (link, target, census) in TARGETS.items():
        if args.only and name not in args.only:
            continue
        rng = random.Random(args.seed)
        found = None
        for cap in (6, 7, 8, 9, 10, 11, 12):
            found = search(link, target, rng, steps=20000, max_crossings=cap, census=census)
            if found is not None:
                break
        if found is None:
            print(f"{name}: not found")
            continue
        found.require_valid(allow_markers=False)
        print(f"{name}: {len(found.crossings)} crossings, words {found.words()}, "
              f"lk {linking_number(found)}, census {self_crossing_census(found)}")
        (out / f"{name}.json").write_text(json.dumps(found.to_json(), indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()

"""Building diagrams that realize a given pair of non-self OU words.

Two families of constructions live here.  ``construction1`` and
``construction2`` draw one component as a round circle and thread the other
through it.  ``synth_trivial``, ``synth_hopf``, ``synth_solomon`` and
``synth_whitehead`` start from a small core diagram of the requested link type
whose non-self crossings already read a few fixed letters, place the remaining
letters as markers, and then reroute short marker-only pieces of K1 across K2
one matched pair of letters at a time.  Each reroute erases a crossing-free
piece of K1 and redraws it uniformly over (or under) everything, so the link
type never changes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations, product
from typing import Optional

from .classifier import failed_condition
from .diagram import DiagramError, PlanarDiagram
from .routing import delete_path, draw_route, find_route
from .templates import bigon_flip, closed_braid, find_bigons, torus_minimal
from .words import (
    CyclicWord,
    MarkedWord,
    WordPair,
    count,
    disjoint_ou_uo_pairs,
    is_well_balanced,
    phi_cyclic,
    surviving_reductions,
)


class SynthesisError(RuntimeError):
    """Internal failure: a construction that should always succeed did not."""

    def __init__(self, message: str, dump: Optional[dict] = None):
        super().__init__(message)
        self.dump = dump or {}


class PreconditionError(ValueError):
    """The requested pair is not admissible for the requested family."""


# ---------------------------------------------------------------------------
# core templates

TEMPLATE_KINDS = ("A", "B", "C", "D", "Da", "Db", "DaPrime", "DbPrime", "TorusMinimal")


def _flip_every_other(base: PlanarDiagram, count_: int, last_twist: bool = False) -> PlanarDiagram:
    """Flip the eligible bigons number 0, 2, 4, ... (``count_`` of them) in braid order.

    With ``last_twist`` the final flip uses the opposite self-crossing choice
    at K2, which turns the unknotted tangle into a clasp.
    """
    targets = [(b.p, b.q) for b in find_bigons(base)][0: 2 * count_: 2]
    if len(targets) < count_:
        raise DiagramError("not enough eligible bigons")
    d = base
    for i, (p, q) in enumerate(targets):
        face = next(b.face for b in find_bigons(d) if (b.p, b.q) == (p, q))
        twist = (0, 1) if last_twist and i == count_ - 1 else (0, 0)
        d = bigon_flip(d, face, twist)
    return d


def _load_data(name: str) -> PlanarDiagram:
    text = resources.files("linkweave").joinpath("data", f"{name}.json").read_text()
    return PlanarDiagram.from_json(json.loads(text))


def expand_template(kind: str, n: int) -> PlanarDiagram:
    """Core diagrams.

    * ``A(N)``: unlink, non-self words alternating of length ``4N``.
    * ``B(N)``: Hopf link, length ``4N + 2``.
    * ``C(N)``: Solomon link, length ``4N + 4``.
    * ``D(N)``: Whitehead link, length ``4N + 4``.
    * ``Da``/``Db`` (Solomon) and ``DaPrime``/``DbPrime`` (Whitehead) read
      ``(UOOU, OUUO)`` and ``(UOOU, OUOU)``; ``n`` is ignored.
    * ``TorusMinimal(n)``: the closed 2-braid with ``2n`` crossings.
    """
    if kind not in TEMPLATE_KINDS:
        raise DiagramError(f"unknown template kind {kind!r}")
    if n < 0 or (kind == "TorusMinimal" and n < 1):
        raise DiagramError(f"invalid parameter {n} for {kind}")
    if kind == "TorusMinimal":
        return torus_minimal(n)
    if kind == "A":
        if n == 0:
            d = PlanarDiagram()
            d.loops = [1, 2]
            return d
        return _flip_every_other(torus_minimal(2 * n), n)
    if kind == "B":
        return _flip_every_other(torus_minimal(2 * n + 1), n)
    if kind == "C":
        return _flip_every_other(torus_minimal(2 * n + 2), n)
    if kind == "D":
        return _flip_every_other(torus_minimal(2 * n + 2), n + 1, last_twist=True)
    if kind == "DbPrime":
        return closed_braid([1, -2, 1, -2, -2], 3)
    return _load_data(kind)


# ---------------------------------------------------------------------------
# constructions 1 and 2


def _marker_circle(d: PlanarDiagram, labels: list, comp: int) -> list[int]:
    """A closed strand made only of markers, in order; returns the vertices."""
    vs = [d.add_vertex("M", label=lab) for lab in labels]
    n = len(vs)
    outs = []
    for i, v in enumerate(vs):
        w = vs[(i + 1) % n]
        a, b = d.add_edge(v, w, comp)
        outs.append((a, b))
    for i, v in enumerate(vs):
        incoming = outs[(i - 1) % n][1]
        outgoing = outs[i][0]
        d.rot[v] = [incoming, outgoing]
    return vs


def _pass_through(d: PlanarDiagram, v: int, arrive: int, comp_over: bool) -> None:
    """Turn a marker that a new strand has just passed into a crossing."""
    d.kind[v] = "X"
    d.label.pop(v, None)
    r = d.rot[v]
    par = r.index(arrive) % 2
    d.over[v] = par if comp_over else 1 - par


def construction1(p: WordPair) -> PlanarDiagram:
    """K1 drawn as a simple circle reading ``w1``; K2 threaded through it.

    K2's i-th letter is placed on an unused point of K1 carrying the opposite
    letter (first available in K1 order).  K2 is routed between consecutive
    points crossing only itself; it is over at its own crossings.
    """
    if not is_well_balanced(p):
        raise PreconditionError(f"pair {p} is not well-balanced")
    w1, w2 = p.w1.word, p.w2.word
    d = PlanarDiagram()
    if not w1:
        d.loops = [1, 2]
        return d
    points = _marker_circle(d, [{"comp": 1, "letter": c} for c in w1], 1)
    free = {"O": [i for i, c in enumerate(w1) if c == "O"], "U": [i for i, c in enumerate(w1) if c == "U"]}
    order = []
    for c in w2:
        other = "U" if c == "O" else "O"
        order.append(points[free[other].pop(0)])
    def crossable(h):
        return d.he_comp.get(h) == 2

    first = order[0]
    exit_corner = d.rot[first][1]
    for i in range(len(order)):
        target = order[(i + 1) % len(order)]
        ends = [d.rot[first][0]] if i == len(order) - 1 else list(d.rot[target])
        route = find_route(d, [exit_corner], ends, crossable)
        if route is None:
            raise SynthesisError("construction 1: K2 cannot reach the next point",
                                 {"pair": str(p), "diagram": d.to_json()})
        others = [h for h in d.rot[target] if h != route.end and d.he_comp[h] == 1]
        draw_route(d, route, 2, over=True)
        exit_corner = others[0]
    for i, v in enumerate(order):
        arrive = next(h for h in d.rot[v] if d.he_comp[h] == 2 and not d.he_out[h])
        _pass_through(d, v, arrive, comp_over=(w2[i] == "O"))
    d.require_valid(allow_markers=False)
    return d


def construction2(p: WordPair) -> PlanarDiagram:
    """Construction 1 with the roles of the components exchanged."""
    if not is_well_balanced(p):
        raise PreconditionError(f"pair {p} is not well-balanced")
    return construction1(p.swapped()).relabeled({1: 2, 2: 1})


# ---------------------------------------------------------------------------
# marked words for the weave


@dataclass
class Provenance:
    family: str
    core: str
    core_parameter: int
    swapped: bool
    s1: str
    s2: str
    reductions: list = field(default_factory=list)
    surgeries: list = field(default_factory=list)
    attempts: int = 1

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "core": self.core,
            "core_parameter": self.core_parameter,
            "swapped": self.swapped,
            "s1": self.s1,
            "s2": self.s2,
            "reductions": self.reductions,
            "surgeries": self.surgeries,
            "attempts": self.attempts,
        }


def _rotate_marked(m: MarkedWord, shift: int) -> MarkedWord:
    n = len(m.letters)
    idx = [(i + shift) % n for i in range(n)]
    pos = {old: new for new, old in enumerate(idx)}
    fixed = tuple(sorted((pos[i], pos[j]) for i, j in m.fixed))
    return MarkedWord(
        "".join(m.letters[i] for i in idx),
        tuple(m.sup[i] for i in idx),
        fixed,
        tuple(m.origin[i] for i in idx) if m.origin else tuple(i + 1 for i in idx),
    )


def _head_fixed_ou(m: MarkedWord) -> MarkedWord:
    """Rotate so that a fixed OU pair (if any) starts the word."""
    ou = [i for i, j in m.fixed if m.letters[i] == "O"]
    if not ou:
        return m
    return _rotate_marked(m, min(ou))


def _marked_w1(w: str, keep_pairs: Optional[list] = None) -> tuple[MarkedWord, list]:
    """Fixed letters plus reduction-order superscripts for the first word."""
    n = len(w)
    if keep_pairs is None:
        removed, ou = surviving_reductions(w)
        fixed = sorted(ou)
    else:
        fixed = sorted(keep_pairs[0])
        removed = keep_pairs[1]
    sup: list[Optional[int]] = [None] * n
    for l, (a, b) in enumerate(removed, start=1):
        sup[a] = sup[b] = l
    m = MarkedWord(w, tuple(sup), tuple(fixed), tuple(range(1, n + 1)))
    m.check()
    return m, [[a + 1, b + 1] for a, b in removed]


def _pairings(positions: list[int], levels: list[int]):
    """Every way to hand each level two of ``positions``."""
    if not positions:
        yield {}
        return
    first, rest = positions[0], positions[1:]
    for t, partner in enumerate(rest):
        remaining = rest[:t] + rest[t + 1:]
        for li, lvl in enumerate(levels):
            for sub in _pairings(remaining, levels[:li] + levels[li + 1:]):
                yield {first: lvl, partner: lvl, **sub}


def _second_words(w: str, fixed: list, s1: MarkedWord):
    """Marked versions of the second word: each level of ``s1`` labels two
    unfixed letters opposite to its own.  The first one yielded pairs the
    letters in reading order."""
    n = len(w)
    taken = {i for pr in fixed for i in pr}
    by_letter: dict[str, list[int]] = {"O": [], "U": []}
    for lvl in range(1, s1.k + 1):
        letter = next(s1.letters[i] for i in range(len(s1.letters)) if s1.sup[i] == lvl)
        by_letter["U" if letter == "O" else "O"].append(lvl)
    free = {c: [i for i in range(n) if i not in taken and w[i] == c] for c in "OU"}
    for c in "OU":
        if len(free[c]) != 2 * len(by_letter[c]):  # pragma: no cover - excluded by balance
            raise SynthesisError("cannot pair superscripts on the second word")
    for po in _pairings(free["O"], by_letter["O"]):
        for pu in _pairings(free["U"], by_letter["U"]):
            sup = [None] * n
            for i, lvl in {**po, **pu}.items():
                sup[i] = lvl
            m = MarkedWord(w, tuple(sup), tuple(sorted(fixed)), tuple(range(1, n + 1)))
            m.check()
            yield m


def _ou_choices(w: str, count_: int):
    """Sets of ``count_`` cyclically adjacent OU pairs, greedy choice first.
    (Two adjacent OU pairs can never share a letter.)"""
    n = len(w)
    ou = [(i, (i + 1) % n) for i in range(n) if w[i] == "O" and w[(i + 1) % n] == "U"]
    if len(ou) < count_:
        raise SynthesisError(f"{w} has fewer than {count_} OU pairs")
    yield ou[:count_]
    for combo in combinations(ou, count_):
        if list(combo) != ou[:count_]:
            yield list(combo)


def _two_pair_choices(w: str):
    """Disjoint (OU, UO) or (OU, OU) adjacent pairs, the default choice first."""
    n = len(w)
    default = sorted(disjoint_ou_uo_pairs(w).fixed)
    yield default
    adj = [(i, (i + 1) % n) for i in range(n)]
    ous = [q for q in adj if w[q[0]] == "O" and w[q[1]] == "U"]
    uos = [q for q in adj if w[q[0]] == "U" and w[q[1]] == "O"]
    for a in ous:
        for b in uos + ous:
            pick = sorted([a, b])
            if a != b and not set(a) & set(b) and pick != default and (b in uos or a < b):
                yield pick


# ---------------------------------------------------------------------------
# weave


def _regions(d: PlanarDiagram) -> tuple[dict[int, int], dict[int, int]]:
    """Faces merged across every edge that is not part of K2."""
    faces, face_of = d.faces()
    parent = list(range(len(faces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h in d.half_edges():
        if d.he_comp[h] != 2:
            a, b = find(face_of[h]), find(face_of[d.twin[h]])
            if a != b:
                parent[max(a, b)] = min(a, b)
    region = {f: find(f) for f in range(len(faces))}
    return face_of, region


def _stretches(d: PlanarDiagram, comp: int) -> tuple[list[int], list[list[int]]]:
    """Non-self crossings met by ``comp`` in order, and for each the outgoing
    half-edges of the edges that follow it up to the next one."""
    seq = d.strand(comp)
    n = len(seq)
    heads = [d.he_vertex[d.twin[h]] for h in seq]
    marks = [i for i in range(n) if d.kind[heads[i]] == "X" and d.is_nonself(heads[i])]
    crossings = [heads[i] for i in marks]
    stretches = []
    for k, i in enumerate(marks):
        j = marks[(k + 1) % len(marks)]
        span = []
        t = (i + 1) % n
        while True:
            span.append(seq[t])
            if t == j:
                break
            t = (t + 1) % n
        stretches.append(span)
    return crossings, stretches


def _place(d: PlanarDiagram, edge_out: int, labels: list) -> None:
    h = edge_out
    for lab in labels:
        v = d.subdivide(h, kind="M", label=lab)
        h = next(g for g in d.rot[v] if d.he_out[g])


def _gaps(m: MarkedWord) -> tuple[str, list[list[int]]]:
    """Fixed letters in order and, after each, the positions up to the next fixed letter."""
    fixed = m.fixed_positions()
    n = len(m.letters)
    gaps = []
    for k, i in enumerate(fixed):
        j = fixed[(k + 1) % len(fixed)]
        span = []
        t = (i + 1) % n
        while t != j:
            span.append(t)
            t = (t + 1) % n
        gaps.append(span)
    return "".join(m.letters[i] for i in fixed), gaps


def _label(m: MarkedWord, i: int, comp: int) -> dict:
    return {"comp": comp, "letter": m.letters[i], "sub": i + 1, "sup": m.sup[i]}


def _rotations(core_word: str, fixed_word: str) -> list[int]:
    n = len(core_word)
    if n != len(fixed_word):
        return []
    return [r for r in range(n) if all(core_word[(j + r) % n] == fixed_word[j] for j in range(n))]


def _prepare_core(core: PlanarDiagram, s1: MarkedWord, s2: MarkedWord) -> PlanarDiagram:
    """Place the unfixed letters of ``s1`` and ``s2`` as markers on the core."""
    if not core.rot:
        return _prepare_empty(s1, s2)
    face_of, region = _regions(core)
    c1, st1 = _stretches(core, 1)
    c2, st2 = _stretches(core, 2)
    w_core1 = "".join(_letter_at(core, v, 1) for v in c1)
    w_core2 = "".join(_letter_at(core, v, 2) for v in c2)
    f1, gaps1 = _gaps(s1)
    f2, gaps2 = _gaps(s2)
    rots1 = _rotations(w_core1, f1)
    rots2 = _rotations(w_core2, f2)
    if not rots1 or not rots2:
        raise SynthesisError("core words do not match the fixed letters",
                             {"core": (w_core1, w_core2), "fixed": (f1, f2)})
    neighbours: dict[int, set[int]] = {}
    for h in core.half_edges():
        if core.he_comp[h] == 2:
            x, y = region[face_of[h]], region[face_of[core.twin[h]]]
            if x != y:
                neighbours.setdefault(x, set()).add(y)
    blocks = [(j, blk) for j, gap in enumerate(gaps1) for blk in _blocks(s1, gap)]
    for r1, r2 in product(rots1, rots2):
        spans = [st1[(j + r1) % len(st1)] for j, _ in blocks]

        def choices(n: int, start: int):
            # (edge index, region pair) options for block n, earliest edge first
            seen = set()
            j = blocks[n][0]
            floor = start if n and blocks[n - 1][0] == j else 0
            for e in range(floor, len(spans[n])):
                here = region[face_of[spans[n][e]]]
                for other in sorted(neighbours.get(here, ())):
                    if (here, other) not in seen:
                        seen.add((here, other))
                        yield e, frozenset((here, other))

        def search(n: int, start: int, chosen: list):
            if n == len(blocks):
                need: list = [None] * len(s2.letters)
                side = {}
                for (_, blk), (_, pair) in zip(blocks, chosen):
                    for i in blk:
                        side[s1.sup[i]] = pair
                for i, lvl in enumerate(s2.sup):
                    if lvl is not None:
                        need[i] = side[lvl]
                placed = _assign_k2(core, face_of, region, st2, r2, gaps2, need)
                return None if placed is None else (list(chosen), placed)
            for e, pair in choices(n, start):
                found = search(n + 1, e, chosen + [(e, pair)])
                if found:
                    return found
            return None

        found = search(0, 0, [])
        if found is None:
            continue
        chosen, placed2 = found
        d = core.copy()
        groups: dict[int, list[int]] = {}
        for n, (e, _) in enumerate(chosen):
            groups.setdefault(spans[n][e], []).extend(blocks[n][1])
        for edge, idx in groups.items():
            _place(d, edge, [_label(s1, i, 1) for i in idx])
        for edge, idx in placed2:
            _place(d, edge, [_label(s2, i, 2) for i in idx])
        return d
    raise SynthesisError("no region assignment admits the marker placement",
                         {"s1": s1.pretty(), "s2": s2.pretty()})


def _blocks(m: MarkedWord, gap: list[int]) -> list[list[int]]:
    """Split a gap into outermost matched pairs together with everything between them."""
    out, i = [], 0
    while i < len(gap):
        lvl = m.sup[gap[i]]
        j = next(t for t in range(i + 1, len(gap)) if m.sup[gap[t]] == lvl)
        out.append(gap[i: j + 1])
        i = j + 1
    return out


def _assign_k2(core, face_of, region, stretches, rot, gaps, need):
    """Spread each K2 gap's letters, in order, over the edges of its stretch so
    that every letter sits on an edge bordering the required pair of regions.
    Returns ``[(edge, [positions...]), ...]`` or None."""
    out = []
    for j, gap in enumerate(gaps):
        if not gap:
            continue
        span = stretches[(j + rot) % len(stretches)]
        sides = [frozenset((region[face_of[h]], region[face_of[core.twin[h]]])) for h in span]
        at = 0
        groups: dict[int, list[int]] = {}
        for i in gap:
            while at < len(span) and sides[at] != need[i]:
                at += 1
            if at == len(span):
                return None
            groups.setdefault(at, []).append(i)
        out.extend((span[e], idx) for e, idx in sorted(groups.items()))
    return out


def _letter_at(d: PlanarDiagram, v: int, comp: int) -> str:
    r = d.rot[v]
    i = next(i for i in range(4) if d.he_comp[r[i]] == comp)
    return "O" if i % 2 == d.over[v] else "U"


def _prepare_empty(s1: MarkedWord, s2: MarkedWord) -> PlanarDiagram:
    """Two marker circles joined by a temporary bridge between two anchors.

    The K1 anchor sits right after one letter of the last-removed pair, so no
    reroute ever needs to pass it.
    """
    d = PlanarDiagram()
    n1 = len(s1.letters)
    k = s1.k
    last = [i for i in range(n1) if s1.sup[i] == k]
    after = last[1]
    labels1 = []
    for i in range(n1):
        labels1.append(_label(s1, i, 1))
        if i == after:
            labels1.append("anchor")
    labels2 = ["anchor"] + [_label(s2, i, 2) for i in range(len(s2.letters))]
    vs1 = _marker_circle(d, labels1, 1)
    vs2 = _marker_circle(d, labels2, 2)
    a1 = next(v for v in vs1 if d.label[v] == "anchor")
    a2 = vs2[0]
    x = d.new_half_edge(a1, 0, True)
    y = d.new_half_edge(a2, 0, False)
    d.join(x, y)
    d.insert_after(d.rot[a1][1], x)
    d.insert_after(d.rot[a2][1], y)
    d.require_valid(allow_bridges=True)
    return d


def _find_markers(d: PlanarDiagram, comp: int, sup: int) -> list[int]:
    return [v for v in d.markers
            if isinstance(d.label.get(v), dict) and d.label[v]["comp"] == comp and d.label[v]["sup"] == sup]


def _marker_path(d: PlanarDiagram, a: int, b: int, level: int) -> Optional[int]:
    """Outgoing half-edge at ``a`` if the strand from ``a`` reaches ``b`` through
    markers of lower level only."""
    h = next(g for g in d.rot[a] if d.he_comp[g] == 1 and d.he_out[g])
    while True:
        v = d.he_vertex[d.twin[h]]
        if v == b:
            return next(g for g in d.rot[a] if d.he_comp[g] == 1 and d.he_out[g])
        lab = d.label.get(v)
        if d.kind[v] != "M" or not isinstance(lab, dict) or lab["sup"] is None or lab["sup"] >= level:
            return None
        h = d.strand_partner(d.twin[h])


def _cluster_edge(d: PlanarDiagram, h: int) -> bool:
    a, b = d.he_vertex[h], d.he_vertex[d.twin[h]]
    return d.kind[a] == "M" and d.kind[b] == "M"


def _reroute(d: PlanarDiagram, level: int, log: list) -> PlanarDiagram:
    a, b = _find_markers(d, 1, level)
    alpha, beta = _find_markers(d, 2, level)
    letter = d.label[a]["letter"]
    over = letter == "O"
    attempts = []
    for p, q in ((a, b), (b, a)):
        first = _marker_path(d, p, q, level)
        if first is not None:
            attempts.append((p, q, first))
    if not attempts:
        raise SynthesisError(f"level {level}: no marker-only piece of K1 joins the pair")
    for (p, q, first), (x, y) in product(attempts, ((alpha, beta), (beta, alpha))):
        for ex, ey in product((0, 1), (0, 1)):
            g = d.copy()
            inner = delete_path(g, first, q)
            done = _draw_j(g, p, q, x, y, ex, ey, over)
            if done is None:
                continue
            j_after_x = done
            _place(g, j_after_x, inner)
            g.dissolve(p)
            g.dissolve(q)
            log.append({"level": level, "letter": letter, "inner": len(inner),
                        "crossings": len(g.crossings)})
            return g
    raise SynthesisError(f"level {level}: reroute is not routable", {"diagram": d.to_json()})


def _draw_j(g: PlanarDiagram, p: int, q: int, x: int, y: int, ex: int, ey: int, over: bool) -> Optional[int]:
    """Route the new piece p -> x -> y -> q.  Returns the outgoing half-edge of
    the first edge after ``x``, or None when some leg has no route."""
    own: set[int] = set()

    def crossable(h):
        return g.he_comp[h] == 1 and h not in own and not _cluster_edge(g, h)

    start = g.rot[p][0]
    legs, arrivals = [], []
    for target, choice in ((x, ex), (y, ey)):
        entry = g.rot[target][choice]
        leave = g.rot[target][1 - choice]
        route = find_route(g, [start], [entry], crossable)
        if route is None:
            return None
        outs, _ = draw_route(g, route, 1, over)
        own.update(h for o in outs for h in (o, g.twin[o]))
        arrivals.append((target, g.twin[outs[-1]]))
        legs.append(outs)
        start = leave
    route = find_route(g, [start], [g.rot[q][0]], crossable)
    if route is None:
        return None
    draw_route(g, route, 1, over)
    for target, arrive in arrivals:
        _pass_through(g, target, arrive, comp_over=over)
    return legs[1][0]


def weave(core: PlanarDiagram, s1: MarkedWord, s2: MarkedWord, log: Optional[list] = None) -> PlanarDiagram:
    """Place the unfixed letters on ``core`` and realize them level by level.

    The core is tried as given and then with K1, K2 or both orientations
    reversed (the same unoriented diagram), since which gaps can share a pair
    of K2-regions depends on the direction the fixed letters are read in.
    """
    last: Optional[SynthesisError] = None
    for flip1, flip2 in CORE_VARIANTS:
        c = core.reversed(1) if flip1 else core
        c = c.reversed(2) if flip2 else c
        steps: list = []
        try:
            d = _weave_once(c, s1, s2, steps)
        except SynthesisError as err:
            last = err
            continue
        if log is not None:
            log.extend(steps)
        return d
    assert last is not None
    raise last


# the core as drawn, then with K1, K2 or both orientations reversed
CORE_VARIANTS = ((False, False), (True, False), (False, True), (True, True))


def _weave_once(core: PlanarDiagram, s1: MarkedWord, s2: MarkedWord, log: list) -> PlanarDiagram:
    d = _prepare_core(core, s1, s2)
    for level in range(s1.k, 0, -1):
        d = _reroute(d, level, log)
    for h in [h for h in d.half_edges() if d.he_comp[h] == 0]:
        if h in d.twin:
            d.delete_edge(h)
    for v in d.markers:
        if d.label.get(v) == "anchor":
            d.dissolve(v)
    leftover = d.markers
    if leftover:
        raise SynthesisError("markers left after weaving", {"markers": [d.label[v] for v in leftover]})
    d.require_valid(allow_markers=False)
    return d


# ---------------------------------------------------------------------------
# family pipelines

FAMILIES = ("trivial", "hopf", "solomon", "whitehead")


def synthesize(p: WordPair, family: str, provenance: Optional[list] = None) -> PlanarDiagram:
    """Diagram of the requested link family whose non-self OU words are ``p``."""
    if family == "split":
        family = "trivial"
    if family == "nonsplit":
        family = "hopf" if count(p.w1)[0] % 2 else "solomon"
    if family == "any":
        family = "hopf" if count(p.w1)[0] % 2 else "trivial"
    reason = failed_condition(p, family)
    if reason:
        raise PreconditionError(f"{family}: {reason}")
    w1, w2 = p.w1.word, p.w2.word
    if not w1 and not w2:
        d = PlanarDiagram()
        d.loops = [1, 2]
        return d
    orders = [phi_cyclic(w1) > phi_cyclic(w2)]
    if phi_cyclic(w1) == phi_cyclic(w2):
        orders.append(True)
    log: list = []
    attempts = 0
    d = None
    last = SynthesisError("no candidate layouts")
    for swapped in orders:
        a, b = (w2, w1) if swapped else (w1, w2)
        for core_kind, n, s1, s2, reductions in _setups(a, b, family, phi_cyclic(a)):
            s1, s2 = _head_fixed_ou(s1), _head_fixed_ou(s2)
            attempts += 1
            try:
                log = []
                d = weave(expand_template(core_kind, n), s1, s2, log)
                break
            except SynthesisError as err:
                last = err
            if d is not None or attempts >= MAX_ATTEMPTS:
                break
        if d is not None:
            break
    if d is None:
        raise SynthesisError(f"{family}: no marker layout worked after {attempts} attempts: {last}",
                             last.dump)
    if swapped:
        d = d.relabeled({1: 2, 2: 1})
    got = d.words()
    if (CyclicWord(got[0]), CyclicWord(got[1])) != (p.w1, p.w2):
        raise SynthesisError(f"woven diagram reads {got}, expected {p}", {"diagram": d.to_json()})
    if provenance is not None:
        provenance.append(Provenance(family, core_kind, n, swapped, s1.pretty(), s2.pretty(),
                                     reductions, log, attempts))
    return d


MAX_ATTEMPTS = 5000


def _setups(w1: str, w2: str, family: str, phi1: int):
    """Candidate (core, S1, S2) choices, most natural first."""
    if family in ("solomon", "whitehead") and phi1 == 0:
        m = disjoint_ou_uo_pairs(w1)
        levels: dict[int, list[int]] = {}
        for i, lvl in enumerate(m.sup):
            if lvl is not None:
                levels.setdefault(lvl, []).append(i)
        removed = [tuple(levels[lvl]) for lvl in sorted(levels)]
        s1, reductions = _marked_w1(w1, (list(m.fixed), removed))
        for fixed in _two_pair_choices(w2):
            letters = "".join(w2[i] for pr in fixed for i in pr)
            mixed = CyclicWord(letters) == CyclicWord("OUUO")
            if family == "solomon":
                kind = "Da" if mixed else "Db"
            else:
                kind = "DaPrime" if mixed else "DbPrime"
            for s2 in _second_words(w2, fixed, s1):
                yield kind, 0, s1, s2, reductions
        return
    core = {"trivial": ("A", phi1 // 2), "hopf": ("B", (phi1 - 1) // 2),
            "solomon": ("C", (phi1 - 2) // 2), "whitehead": ("D", (phi1 - 2) // 2)}[family]
    s1, reductions = _marked_w1(w1)
    for fixed in _ou_choices(w2, phi1):
        for s2 in _second_words(w2, fixed, s1):
            yield core[0], core[1], s1, s2, reductions


def synth_trivial(p: WordPair, provenance: Optional[list] = None) -> PlanarDiagram:
    return synthesize(p, "trivial", provenance)


def synth_hopf(p: WordPair, provenance: Optional[list] = None) -> PlanarDiagram:
    return synthesize(p, "hopf", provenance)


def synth_solomon(p: WordPair, provenance: Optional[list] = None) -> PlanarDiagram:
    return synthesize(p, "solomon", provenance)


def synth_whitehead(p: WordPair, provenance: Optional[list] = None) -> PlanarDiagram:
    return synthesize(p, "whitehead", provenance)


__all__ = [
    "PreconditionError",
    "SynthesisError",
    "Provenance",
    "TEMPLATE_KINDS",
    "expand_template",
    "bigon_flip",
    "construction1",
    "construction2",
    "weave",
    "synthesize",
    "synth_trivial",
    "synth_hopf",
    "synth_solomon",
    "synth_whitehead",
    "FAMILIES",
]

"""Closed braids, the minimal torus-link diagrams and the bigon flip.

Braids are drawn going north.  A crossing lists its half-edges counter-clockwise
as ``[NE, NW, SW, SE]``; the strand entering at SW leaves at NE.  A positive
generator puts the SW-NE strand over, which makes the crossing right-handed
when both strands point north.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .diagram import DiagramError, PlanarDiagram

NE, NW, SW, SE = range(4)


def closed_braid(word: Sequence[int], strands: int, first: int = 1) -> PlanarDiagram:
    """Diagram of the closure of a braid word (``±i`` for the generator ``σ_i^{±1}``).

    The closure must have exactly two components.  The component through the
    bottom of position ``first`` becomes K1.
    """
    d = PlanarDiagram()
    top: dict[int, int] = {}
    bottom: dict[int, int] = {}
    for g in word:
        i = abs(g)
        if not 1 <= i < strands:
            raise DiagramError(f"generator {g} out of range")
        v = d.add_vertex("X", over=0 if g > 0 else 1)
        hs = [d.new_half_edge(v, -1, out) for out in (True, True, False, False)]
        d.rot[v] = hs
        for pos, h in ((i, hs[SW]), (i + 1, hs[SE])):
            if pos in top:
                d.join(top[pos], h)
            else:
                bottom[pos] = h
        top[i] = hs[NW]
        top[i + 1] = hs[NE]
    for pos in range(1, strands + 1):
        if pos in top:
            d.join(top[pos], bottom[pos])
        else:
            d.loops.append(-1)
    # label components by walking strands
    unlabeled = {h for h, c in d.he_comp.items() if c == -1}
    order = sorted(bottom, key=lambda p: (p != first, p))
    comp = 0
    for pos in order:
        h = bottom[pos]
        if h not in unlabeled:
            continue
        comp += 1
        start = d.twin[h]
        g = start
        while True:
            for x in (g, d.twin[g]):
                d.he_comp[x] = comp
                unlabeled.discard(x)
            g = d.next_out(g)
            if g == start:
                break
    d.loops = [comp + 1 + k for k in range(len(d.loops))]
    if comp + len(d.loops) != 2:
        raise DiagramError("braid closure does not have two components")
    return d


def torus_minimal(n: int) -> PlanarDiagram:
    """Minimal diagram of the (2, 2n) torus link; all crossings negative, lk = -n."""
    if n < 1:
        raise DiagramError("torus_minimal needs n >= 1")
    return closed_braid([-1] * (2 * n), 2)


# ---------------------------------------------------------------------------
# bigons


@dataclass(frozen=True)
class Bigon:
    face: int
    p: int  # crossing where both arcs start
    q: int  # crossing where both arcs end
    a: int  # K1 arc, outgoing half-edge at p
    b: int  # K2 arc, outgoing half-edge at p


def _bigon_at(d: PlanarDiagram, walk: list[int]) -> Optional[Bigon]:
    if len(walk) != 2:
        return None
    h1, h2 = walk
    u, w = d.he_vertex[h1], d.he_vertex[h2]
    if u == w or d.kind[u] != "X" or d.kind[w] != "X":
        return None
    outs = [h if d.he_out[h] else d.twin[h] for h in walk]
    tails = {d.he_vertex[h] for h in outs}
    if len(tails) != 1:
        return None
    p = tails.pop()
    q = w if p == u else u
    comps = {d.he_comp[h]: h for h in outs}
    if set(comps) != {1, 2}:
        return None
    return Bigon(-1, p, q, comps[1], comps[2])


def _k1_over(d: PlanarDiagram, v: int) -> bool:
    r = d.rot[v]
    k1 = [i for i in range(4) if d.he_comp[r[i]] == 1]
    return k1[0] % 2 == d.over[v]


def find_bigons(d: PlanarDiagram, eligible_only: bool = True) -> list[Bigon]:
    """Bigons with parallel K1 and K2 arcs; with ``eligible_only`` also require
    K1 over at the start, under at the end and both crossings negative."""
    faces, _ = d.faces()
    out = []
    for idx, walk in enumerate(faces):
        bg = _bigon_at(d, walk)
        if bg is None:
            continue
        bg = Bigon(idx, bg.p, bg.q, bg.a, bg.b)
        if eligible_only:
            if not (_k1_over(d, bg.p) and not _k1_over(d, bg.q)):
                continue
            if d.sign(bg.p) != -1 or d.sign(bg.q) != -1:
                continue
        out.append(bg)
    out.sort(key=lambda b: (b.p, b.q))
    return out


def bigon_flip(d: PlanarDiagram, face: int, twist: tuple[int, int] = (0, 0)) -> PlanarDiagram:
    """Replace the two negative crossings around an eligible bigon by a tangle
    whose two non-self crossings are positive, keeping the over/under letters
    each component reads there.  Each component gains one kink-like self-crossing.

    ``twist`` chooses which pass is over at the two new self-crossings.
    """
    out = d.copy()
    faces, _ = out.faces()
    if not 0 <= face < len(faces):
        raise DiagramError(f"no face {face}")
    if not any(x.face == face for x in find_bigons(out)):
        raise DiagramError(f"face {face} is not an eligible bigon")
    bg = _bigon_at(out, faces[face])
    P, Q, a_out, b_out = bg.p, bg.q, bg.a, bg.b
    rp, rq = out.rot[P], out.rot[Q]
    ia = rp.index(a_out)
    if rp[(ia + 1) % 4] == b_out:
        mirror = False
    elif rp[(ia - 1) % 4] == b_out:
        mirror = True
    else:  # pragma: no cover - bigon arcs are adjacent at P by construction
        raise DiagramError("bigon arcs are not adjacent")
    k1_in_p = rp[(ia + 2) % 4]
    k2_in_p = rp[(rp.index(b_out) + 2) % 4]
    a_in, b_in = out.twin[a_out], out.twin[b_out]
    k1_out_q = rq[(rq.index(a_in) + 2) % 4]
    k2_out_q = rq[(rq.index(b_in) + 2) % 4]
    k1_over_p = _k1_over(out, P)
    k1_over_q = _k1_over(out, Q)

    new = {}
    P2 = out.add_vertex("X")
    Q2 = out.add_vertex("X")
    S1 = out.add_vertex("X")
    S2 = out.add_vertex("X")

    def he(v, name, comp, is_out):
        new[name] = out.new_half_edge(v, comp, is_out)
        return new[name]

    layouts = {
        P2: [("c3b_in", 2, False), ("c1b_in", 1, False), ("bp_out", 2, True), ("ap_out", 1, True)],
        Q2: [("ap_in", 1, False), ("bp_in", 2, False), ("c2a_out", 1, True), ("c4a_out", 2, True)],
        S1: [("c1b_out", 1, True), ("c2b_out", 1, True), ("c1a_in", 1, False), ("c2a_in", 1, False)],
        S2: [("c4b_out", 2, True), ("c3b_out", 2, True), ("c4a_in", 2, False), ("c3a_in", 2, False)],
    }
    for v, spec in layouts.items():
        r = [he(v, name, comp, is_out) for name, comp, is_out in spec]
        out.rot[v] = list(reversed(r)) if mirror else r
    for x, y in (("c1b_out", "c1b_in"), ("ap_out", "ap_in"), ("c2a_out", "c2a_in"),
                 ("c3b_out", "c3b_in"), ("bp_out", "bp_in"), ("c4a_out", "c4a_in")):
        out.join(new[x], new[y])

    def set_over(v, k1_is_over):
        r = out.rot[v]
        par = next(i for i in range(4) if out.he_comp[r[i]] == 1) % 2
        out.over[v] = par if k1_is_over else 1 - par

    set_over(P2, k1_over_p)
    set_over(Q2, k1_over_q)
    # self-crossings: choose which visit of the component is over
    for v, first_pass, t in ((S1, "c1a_in", twist[0]), (S2, "c3a_in", twist[1])):
        par = out.rot[v].index(new[first_pass]) % 2
        out.over[v] = par if t == 0 else 1 - par

    boundary = {k1_in_p: new["c1a_in"], k1_out_q: new["c2b_out"],
                k2_in_p: new["c3a_in"], k2_out_q: new["c4b_out"]}
    outer = {}
    for old, nh in boundary.items():
        t = out.twin[old]
        outer[nh] = boundary.get(t, t)
    for nh, t in outer.items():
        out.join(nh, t)
    for v in (P, Q):
        for h in out.rot[v]:
            out.twin.pop(h, None)
        out.remove_vertex(v)
    out.require_valid()
    return out


def flip_bigons(d: PlanarDiagram, picks: Sequence[int], twist=(0, 0)) -> PlanarDiagram:
    """Flip eligible bigons by their position in the initial eligible list."""
    chosen = [find_bigons(d)[i] for i in picks]
    out = d
    for bg in chosen:
        faces, _ = out.faces()
        idx = next(i for i, walk in enumerate(faces)
                   if (b := _bigon_at(out, walk)) is not None and b.p == bg.p and b.q == bg.q)
        out = bigon_flip(out, idx, twist)
    return out

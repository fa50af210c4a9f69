"""Oriented two-component link diagrams stored as rotation systems.

A diagram is a plane map.  Each vertex is either a crossing (``"X"``, four
half-edges) or a marker (``"M"``, two half-edges on one strand, used while a
diagram is being synthesized).  ``rot[v]`` lists the half-edges around ``v`` in
counter-clockwise order, so the two strands through a crossing occupy slots
``{0, 2}`` and ``{1, 3}``; ``over[v]`` is the parity of the over-strand slots.

Half-edges carry their vertex, their twin across the edge, a flag telling
whether the strand leaves the vertex through them, and a component label
(1, 2, or 0 for a temporary bridge used during synthesis).  Components with no
vertices at all are kept in ``loops``.

A corner is named by a half-edge ``h``: it is the sector swept counter-clockwise
from ``h`` to the next half-edge at the same vertex.  The face traversal used
throughout leaves a vertex along ``h`` and keeps that corner on its left.
"""

from __future__ import annotations

import copy
import json
from collections import deque
from dataclasses import dataclass
from typing import Any, Iterable, Optional

from .words import CyclicWord, WordPair, is_well_balanced, phi_cyclic


class DiagramError(ValueError):
    """Raised when a diagram is malformed or an operation's precondition fails."""


@dataclass(frozen=True)
class Passage:
    """One visit of a strand to a crossing while walking a component."""

    vertex: int
    letter: str  # "O" or "U"
    nonself: bool


class PlanarDiagram:
    def __init__(self) -> None:
        self.rot: dict[int, list[int]] = {}
        self.kind: dict[int, str] = {}
        self.over: dict[int, int] = {}
        self.label: dict[int, Any] = {}
        self.he_vertex: dict[int, int] = {}
        self.twin: dict[int, int] = {}
        self.he_out: dict[int, bool] = {}
        self.he_comp: dict[int, int] = {}
        self.loops: list[int] = []
        self._next_v = 0
        self._next_h = 0

    # ------------------------------------------------------------------ build

    def copy(self) -> "PlanarDiagram":
        return copy.deepcopy(self)

    def add_vertex(self, kind: str, over: Optional[int] = None, label: Any = None) -> int:
        v = self._next_v
        self._next_v += 1
        self.rot[v] = []
        self.kind[v] = kind
        if kind == "X":
            self.over[v] = 0 if over is None else over
        elif label is not None:
            self.label[v] = label
        return v

    def new_half_edge(self, v: int, comp: int, out: bool) -> int:
        h = self._next_h
        self._next_h += 1
        self.he_vertex[h] = v
        self.he_comp[h] = comp
        self.he_out[h] = out
        return h

    def join(self, h1: int, h2: int) -> None:
        self.twin[h1] = h2
        self.twin[h2] = h1

    def add_edge(self, tail: int, head: int, comp: int) -> tuple[int, int]:
        """Create an edge from ``tail`` to ``head``; half-edges are not placed in ``rot``."""
        a = self.new_half_edge(tail, comp, True)
        b = self.new_half_edge(head, comp, False)
        self.join(a, b)
        return a, b

    def remove_vertex(self, v: int) -> None:
        for h in self.rot[v]:
            for d in (self.he_vertex, self.he_comp, self.he_out):
                d.pop(h, None)
        del self.rot[v], self.kind[v]
        self.over.pop(v, None)
        self.label.pop(v, None)

    # ------------------------------------------------------------- structure

    @property
    def vertices(self) -> list[int]:
        return sorted(self.rot)

    @property
    def crossings(self) -> list[int]:
        return [v for v in sorted(self.rot) if self.kind[v] == "X"]

    @property
    def markers(self) -> list[int]:
        return [v for v in sorted(self.rot) if self.kind[v] == "M"]

    def half_edges(self) -> list[int]:
        return sorted(h for v in self.rot for h in self.rot[v])

    def edges(self) -> list[tuple[int, int]]:
        """Each edge once, as ``(tail_half_edge, head_half_edge)``."""
        out = []
        for h in self.half_edges():
            t = self.twin[h]
            if self.he_comp[h] == 0:
                if h < t:
                    out.append((h, t))
            elif self.he_out[h]:
                out.append((h, t))
        return out

    def slot(self, h: int) -> int:
        return self.rot[self.he_vertex[h]].index(h)

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def next_ccw(self, h: int) -> int:
        r = self.rot[self.he_vertex[h]]
        return r[(r.index(h) + 1) % len(r)]

    def strand_partner(self, h: int) -> int:
        """Half-edge on the other side of the vertex along the same strand."""
        v = self.he_vertex[h]
        r = self.rot[v]
        if self.kind[v] == "X":
            return r[(r.index(h) + 2) % 4]
        comp = self.he_comp[h]
        others = [g for g in r if g != h and self.he_comp[g] == comp and comp != 0]
        if len(others) != 1:
            raise DiagramError(f"marker {v} has no unique strand partner for {h}")
        return others[0]

    def next_out(self, h: int) -> int:
        """From an outgoing half-edge, the outgoing half-edge of the next edge along the strand."""
        return self.strand_partner(self.twin[h])

    def components_present(self) -> list[int]:
        comps = {c for c in self.he_comp.values() if c} | set(self.loops)
        return sorted(comps)

    def strand(self, comp: int) -> list[int]:
        """Outgoing half-edges of ``comp`` in orientation order, from its lowest-id edge."""
        outs = [h for h in self.half_edges() if self.he_comp[h] == comp and self.he_out[h]]
        if not outs:
            return []
        start = min(outs)
        seq = [start]
        h = self.next_out(start)
        while h != start:
            seq.append(h)
            if len(seq) > len(outs):
                raise DiagramError(f"component {comp} does not close up")
            h = self.next_out(h)
        return seq

    def passages(self, comp: int) -> list[Passage]:
        out = []
        for h in self.strand(comp):
            t = self.twin[h]
            v = self.he_vertex[t]
            if self.kind[v] != "X":
                continue
            i = self.rot[v].index(t)
            letter = "O" if i % 2 == self.over[v] else "U"
            out.append(Passage(v, letter, self.is_nonself(v)))
        return out

    def is_nonself(self, v: int) -> bool:
        r = self.rot[v]
        return self.he_comp[r[0]] != self.he_comp[r[1]]

    def sign(self, v: int) -> int:
        """Right-handed crossings are +1."""
        r = self.rot[v]
        p = self.over[v]
        under_in = next(i for i in range(4) if i % 2 != p and not self.he_out[r[i]])
        over_in = next(i for i in range(4) if i % 2 == p and not self.he_out[r[i]])
        return 1 if over_in == (under_in + 3) % 4 else -1

    # -------------------------------------------------------------- faces

    def faces(self) -> tuple[list[list[int]], dict[int, int]]:
        """Boundary walks as lists of darts (half-edges), plus dart -> face index."""
        face_of: dict[int, int] = {}
        faces: list[list[int]] = []
        for h in self.half_edges():
            if h in face_of:
                continue
            idx = len(faces)
            walk = []
            d = h
            while d not in face_of:
                face_of[d] = idx
                walk.append(d)
                t = self.twin[d]
                r = self.rot[self.he_vertex[t]]
                d = r[(r.index(t) - 1) % len(r)]
            faces.append(walk)
        return faces, face_of

    def graph_components(self) -> list[set[int]]:
        seen: set[int] = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = {v}
            queue = deque([v])
            seen.add(v)
            while queue:
                u = queue.popleft()
                for h in self.rot[u]:
                    w = self.he_vertex[self.twin[h]]
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        queue.append(w)
            comps.append(comp)
        return comps

    def euler_ok(self) -> bool:
        """Every connected piece of the underlying graph is a sphere map (V - E + F = 2)."""
        faces, face_of = self.faces()
        for comp in self.graph_components():
            hs = [h for v in comp for h in self.rot[v]]
            nf = len({face_of[h] for h in hs})
            if len(comp) - len(hs) // 2 + nf != 2:
                return False
        return True

    # ------------------------------------------------------------ validation

    def validate(self, allow_markers: bool = True, allow_bridges: bool = False) -> list[str]:
        problems: list[str] = []
        for v, r in self.rot.items():
            k = self.kind[v]
            if k == "X":
                if len(r) != 4:
                    problems.append(f"degree: crossing {v} has {len(r)} slots")
                    continue
                if self.over.get(v) not in (0, 1):
                    problems.append(f"over: crossing {v} has no over flag")
            elif k == "M":
                if not allow_markers:
                    problems.append(f"marker: vertex {v} is a marker")
                real = [h for h in r if self.he_comp.get(h) != 0]
                if len(real) != 2 or len(r) - len(real) > (1 if allow_bridges else 0):
                    problems.append(f"degree: marker {v} has {len(r)} slots")
                    continue
            else:
                problems.append(f"kind: vertex {v} has unknown kind {k!r}")
                continue
            for h in r:
                if self.he_vertex.get(h) != v:
                    problems.append(f"incidence: half-edge {h} misplaced")
        for v, r in self.rot.items():
            for h in r:
                t = self.twin.get(h)
                if t is None or t == h or self.twin.get(t) != h or t not in self.he_vertex:
                    problems.append(f"pairing: half-edge {h} has no proper twin")
                    continue
                if self.he_comp[h] != self.he_comp[t]:
                    problems.append(f"components: edge {h}-{t} has two labels")
                if self.he_comp[h] == 0:
                    if not allow_bridges:
                        problems.append(f"bridge: edge {h}-{t} is not part of a strand")
                elif self.he_out[h] == self.he_out[t]:
                    problems.append(f"orientation: edge {h}-{t} is not directed")
        if problems:
            return problems
        for v, r in self.rot.items():
            if self.kind[v] == "X":
                for i in (0, 1):
                    a, b = r[i], r[i + 2]
                    if self.he_comp[a] != self.he_comp[b] or self.he_comp[a] not in (1, 2):
                        problems.append(f"strand: crossing {v} slots {i},{i + 2} change component")
                    if self.he_out[a] == self.he_out[b]:
                        problems.append(f"orientation: crossing {v} slots {i},{i + 2} do not pass through")
            else:
                real = [h for h in r if self.he_comp[h] != 0]
                if self.he_out[real[0]] == self.he_out[real[1]]:
                    problems.append(f"orientation: marker {v} does not pass through")
                if self.he_comp[real[0]] != self.he_comp[real[1]] or self.he_comp[real[0]] not in (1, 2):
                    problems.append(f"strand: marker {v} changes component")
        if problems:
            return problems
        for comp in (1, 2):
            in_graph = any(c == comp for c in self.he_comp.values())
            n_loops = self.loops.count(comp)
            if in_graph + n_loops != 1:
                problems.append(f"components: K{comp} appears {in_graph + n_loops} times")
            if in_graph:
                try:
                    seq = self.strand(comp)
                except DiagramError as exc:
                    problems.append(f"components: {exc}")
                    continue
                total = sum(1 for h in self.he_comp if self.he_comp[h] == comp and self.he_out[h])
                if len(seq) != total:
                    problems.append(f"components: K{comp} is not a single closed strand")
        extra = set(self.loops) - {1, 2}
        if extra:
            problems.append(f"components: unexpected loop labels {sorted(extra)}")
        if not self.euler_ok():
            problems.append("euler: rotation system is not a sphere embedding")
        return problems

    def require_valid(self, **kw) -> None:
        problems = self.validate(**kw)
        if problems:
            raise DiagramError("; ".join(problems))

    # ----------------------------------------------------------- extraction

    def words(self) -> tuple[str, str]:
        return tuple(  # type: ignore[return-value]
            "".join(p.letter for p in self.passages(c) if p.nonself) for c in (1, 2)
        )

    def reversed(self, comp: int) -> "PlanarDiagram":
        d = self.copy()
        for h, c in d.he_comp.items():
            if c == comp:
                d.he_out[h] = not d.he_out[h]
        return d

    def mirrored(self) -> "PlanarDiagram":
        d = self.copy()
        for v in d.crossings:
            d.over[v] ^= 1
        return d

    def relabeled(self, mapping: dict[int, int]) -> "PlanarDiagram":
        d = self.copy()
        for h, c in d.he_comp.items():
            d.he_comp[h] = mapping.get(c, c)
        d.loops = sorted(mapping.get(c, c) for c in d.loops)
        return d

    def writhe(self) -> int:
        return sum(self.sign(v) for v in self.crossings)

    # ------------------------------------------------------------ mutation

    def subdivide(self, h: int, kind: str = "M", label: Any = None) -> int:
        """Insert a degree-2 vertex in the middle of the edge of ``h``.

        The corner after the new half-edge facing ``twin[h]``'s end lies in the
        face of dart ``h``; the other corner lies in the face of the twin dart.
        """
        t = self.twin[h]
        comp = self.he_comp[h]
        x = self.add_vertex(kind, label=label)
        if kind == "X":
            self.over.pop(x, None)
        near = self.new_half_edge(x, comp, not self.he_out[h])
        far = self.new_half_edge(x, comp, not self.he_out[t])
        self.join(h, near)
        self.join(t, far)
        self.rot[x] = [near, far]
        return x

    def dissolve(self, x: int) -> None:
        """Remove a degree-2 vertex, merging its two edges."""
        r = self.rot[x]
        if len(r) != 2:
            raise DiagramError(f"vertex {x} has degree {len(r)}")
        a, b = (self.twin[h] for h in r)
        if a in r:
            raise DiagramError(f"vertex {x} sits on a loop edge")
        for h in r:
            del self.twin[h]
        self.join(a, b)
        self.remove_vertex(x)

    def insert_after(self, corner: int, h: int) -> None:
        """Place the half-edge ``h`` in the corner named by half-edge ``corner``."""
        v = self.he_vertex[corner]
        r = self.rot[v]
        r.insert(r.index(corner) + 1, h)
        self.he_vertex[h] = v

    def delete_edge(self, h: int) -> None:
        t = self.twin.pop(h)
        del self.twin[t]
        for g in (h, t):
            self.rot[self.he_vertex[g]].remove(g)
            for d in (self.he_vertex, self.he_comp, self.he_out):
                del d[g]

    # -------------------------------------------------------------- export

    def _edge_numbering(self) -> tuple[list[tuple[int, int]], dict[int, int]]:
        order: list[tuple[int, int]] = []
        for comp in (1, 2):
            for h in self.strand(comp):
                order.append((h, self.twin[h]))
        for h, t in self.edges():
            if self.he_comp[h] == 0:
                order.append((h, t))
        number = {}
        for i, (h, t) in enumerate(order, start=1):
            number[h] = number[t] = i
        return order, number

    def to_json(self) -> dict:
        order, number = self._edge_numbering()
        crossings = self.crossings
        markers = self.markers
        index = {v: i for i, v in enumerate(crossings + markers)}
        data: dict[str, Any] = {
            "crossings": [
                {"slots": [number[h] for h in self.rot[v]], "over": self.over[v]} for v in crossings
            ],
            "markers": [
                {"slots": [number[h] for h in self.rot[v]], "label": self.label.get(v)} for v in markers
            ],
            "orient": [
                [[index[self.he_vertex[h]], self.slot(h)], [index[self.he_vertex[t]], self.slot(t)]]
                for h, t in order
            ],
            "components": [self.he_comp[h] for h, _ in order],
            "loops": sorted(self.loops),
        }
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "PlanarDiagram":
        d = cls()
        specs = [("X", c) for c in data.get("crossings", [])] + [
            ("M", m) for m in data.get("markers", [])
        ]
        for kind, spec in specs:
            v = d.add_vertex(kind, over=spec.get("over") if kind == "X" else None, label=spec.get("label"))
            d.rot[v] = [None] * len(spec["slots"])  # type: ignore[list-item]
        orient = data.get("orient", [])
        comps = data.get("components", [])
        if len(orient) != len(comps):
            raise DiagramError("orient and components lengths differ")
        for e, ((tv, ts), (hv, hs)) in enumerate(orient):
            comp = comps[e]
            a = d.new_half_edge(tv, comp, True)
            b = d.new_half_edge(hv, comp, False)
            d.join(a, b)
            for v, s, h in ((tv, ts, a), (hv, hs, b)):
                if v not in d.rot or not 0 <= s < len(d.rot[v]) or d.rot[v][s] is not None:
                    raise DiagramError(f"edge {e + 1} uses an invalid or taken slot ({v}, {s})")
                d.rot[v][s] = h
        for v, (kind, spec) in enumerate(specs):
            for s, h in enumerate(d.rot[v]):
                if h is None:
                    raise DiagramError(f"vertex {v} slot {s} is unused")
                if spec["slots"][s] != h // 2 + 1:
                    raise DiagramError(f"vertex {v} slot {s} disagrees with the orient table")
        d.loops = list(data.get("loops", []))
        return d

    @classmethod
    def loads(cls, text: str) -> "PlanarDiagram":
        return cls.from_json(json.loads(text))

    def pd_text(self) -> str:
        """Classical PD notation: each ``X[a,b,c,d]`` starts at the incoming under edge."""
        _, number = self._edge_numbering()
        out = []
        for v in self.crossings:
            r = self.rot[v]
            p = self.over[v]
            u = next(i for i in range(4) if i % 2 != p and not self.he_out[r[i]])
            labels = [number[r[(u + i) % 4]] for i in range(4)]
            out.append("X[" + ",".join(map(str, labels)) + "]")
        return "PD[" + ", ".join(out) + "]"

    def to_dot(self) -> str:
        _, number = self._edge_numbering()
        lines = ["graph diagram {"]
        for v in self.vertices:
            shape = "circle" if self.kind[v] == "X" else "point"
            lines.append(f'  v{v} [shape={shape}, label="{v}"];')
        colors = {0: "gray", 1: "red", 2: "blue"}
        for h, t in self.edges():
            a, b = self.he_vertex[h], self.he_vertex[t]
            c = self.he_comp[h]
            lines.append(f'  v{a} -- v{b} [label="{number[h]}", color={colors[c]}];')
        for i, c in enumerate(self.loops):
            lines.append(f'  loop{i} [shape=circle, label="K{c}", color={colors[c]}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Extraction operations on valid diagrams


def _checked(d: PlanarDiagram) -> PlanarDiagram:
    d.require_valid(allow_markers=True)
    return d


def validate(d: PlanarDiagram) -> list[str]:
    return d.validate()


def extract_nonself_ou(d: PlanarDiagram) -> WordPair:
    w1, w2 = _checked(d).words()
    assert len(w1) % 2 == 0 and len(w2) % 2 == 0, (w1, w2)
    return WordPair(CyclicWord(w1), CyclicWord(w2))


def linking_number(d: PlanarDiagram) -> int:
    total = sum(d.sign(v) for v in _checked(d).crossings if d.is_nonself(v))
    assert total % 2 == 0
    return total // 2


def component_phi(d: PlanarDiagram, which: int) -> int:
    if which not in (1, 2):
        raise DiagramError("component must be 1 or 2")
    w = _checked(d).words()[which - 1]
    value = phi_cyclic(w)
    rev = d.reversed(which).words()[which - 1]
    assert phi_cyclic(rev) == value
    return value


def self_crossing_census(d: PlanarDiagram) -> tuple[int, int]:
    counts = {1: 0, 2: 0}
    for v in _checked(d).crossings:
        if not d.is_nonself(v):
            counts[d.he_comp[d.rot[v][0]]] += 1
    return counts[1], counts[2]


def predict_self_crossing(p: WordPair) -> bool:
    if not is_well_balanced(p):
        raise DiagramError(f"pair {p} is not well-balanced")
    return phi_cyclic(p.w1) != phi_cyclic(p.w2)


def two_circles() -> PlanarDiagram:
    d = PlanarDiagram()
    d.loops = [1, 2]
    return d


def load_fixture(path) -> PlanarDiagram:
    with open(path) as fh:
        return PlanarDiagram.from_json(json.load(fh))


def nonself_crossings(d: PlanarDiagram) -> list[int]:
    return [v for v in d.crossings if d.is_nonself(v)]


def iter_corners(d: PlanarDiagram, v: int) -> Iterable[int]:
    return list(d.rot[v])

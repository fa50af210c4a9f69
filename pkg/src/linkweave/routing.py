"""Drawing new arcs into a diagram through its faces.

An arc is routed as a path in the dual graph: it starts in a corner, passes
from face to face by crossing edges that the caller allows, and ends in a
target corner.  Every crossed edge receives a new crossing; the new arc is over
(or under) at all of them.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .diagram import DiagramError, PlanarDiagram

Crossable = Callable[[int], bool]


class RoutingError(DiagramError):
    """No admissible path exists for the requested arc."""


@dataclass(frozen=True)
class Route:
    start: int  # corner (half-edge) where the arc leaves
    darts: tuple[int, ...]  # crossed edges, each as the dart on the departing side
    end: int  # corner where the arc arrives


def _dual(d: PlanarDiagram, crossable: Crossable):
    faces, face_of = d.faces()
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(faces))}
    for h in d.half_edges():
        if crossable(h):
            a, b = face_of[h], face_of[d.twin[h]]
            if a != b:
                adj[a].append((b, h))
    for lst in adj.values():
        lst.sort()
    return faces, face_of, adj


def find_route(
    d: PlanarDiagram,
    starts: Iterable[int],
    ends: Iterable[int],
    crossable: Crossable,
) -> Optional[Route]:
    """Shortest route between any start corner and any end corner.

    Breadth-first search over faces; ties go to lower face indices and then to
    lower half-edge ids, so the result is deterministic.
    """
    _, face_of, adj = _dual(d, crossable)
    starts = sorted(starts)
    ends = sorted(ends)
    end_by_face: dict[int, int] = {}
    for c in ends:
        end_by_face.setdefault(face_of[c], c)
    start_by_face: dict[int, int] = {}
    for c in starts:
        start_by_face.setdefault(face_of[c], c)
    parent: dict[int, Optional[tuple[int, int]]] = {}
    queue: deque[int] = deque()
    for f in sorted(start_by_face):
        parent[f] = None
        queue.append(f)
    while queue:
        f = queue.popleft()
        if f in end_by_face:
            darts = []
            g = f
            while parent[g] is not None:
                prev, h = parent[g]
                darts.append(h)
                g = prev
            darts.reverse()
            return Route(start_by_face[g], tuple(darts), end_by_face[f])
        for nb, h in adj[f]:
            if nb not in parent:
                parent[nb] = (f, h)
                queue.append(nb)
    return None


def random_route(
    d: PlanarDiagram,
    start: int,
    ends: Iterable[int],
    crossable: Crossable,
    rng: random.Random,
    max_len: int = 6,
) -> Optional[Route]:
    """A random simple face path (used only for exploratory fixture searches)."""
    _, face_of, adj = _dual(d, crossable)
    end_by_face = {face_of[c]: c for c in sorted(ends)}
    f0 = face_of[start]
    for _ in range(50):
        path_faces = [f0]
        darts: list[int] = []
        while True:
            f = path_faces[-1]
            if f in end_by_face and (rng.random() < 0.5 or len(darts) >= max_len):
                return Route(start, tuple(darts), end_by_face[f])
            options = [(nb, h) for nb, h in adj[f] if nb not in path_faces]
            if not options or len(darts) >= max_len:
                break
            nb, h = rng.choice(options)
            path_faces.append(nb)
            darts.append(h)
    return None


def draw_route(d: PlanarDiagram, route: Route, comp: int, over: bool) -> tuple[list[int], list[int]]:
    """Insert the arc described by ``route`` into ``d`` (in place).

    The arc runs from ``route.start`` to ``route.end`` as strand ``comp``.
    Returns the outgoing half-edges of the new arc's edges in order, and the
    new crossing vertices in order.
    """
    corners = [route.start]
    xs = []
    for h in route.darts:
        x = d.subdivide(h, kind="X")
        near, far = d.rot[x]
        corners.extend([far, near])
        xs.append(x)
    corners.append(route.end)
    outs = []
    for i in range(0, len(corners), 2):
        c1, c2 = corners[i], corners[i + 1]
        a = d.new_half_edge(d.he_vertex[c1], comp, True)
        b = d.new_half_edge(d.he_vertex[c2], comp, False)
        d.join(a, b)
        d.insert_after(c1, a)
        d.insert_after(c2, b)
        outs.append(a)
    arc = set(outs) | {d.twin[h] for h in outs}
    for x in xs:
        r = d.rot[x]
        par = next(i for i in range(4) if r[i] in arc) % 2
        d.over[x] = par if over else 1 - par
    return outs, xs


def delete_path(d: PlanarDiagram, first_out: int, last_vertex: int) -> list:
    """Delete the strand from the vertex of ``first_out`` to ``last_vertex``.

    Interior vertices must be plain markers; they are removed and their labels
    returned in order.  The two end vertices each lose one half-edge.
    """
    edges, interior = [], []
    h = first_out
    while True:
        edges.append(h)
        t = d.twin[h]
        v = d.he_vertex[t]
        if v == last_vertex:
            break
        if d.kind[v] != "M" or d.degree(v) != 2:
            raise DiagramError(f"path passes vertex {v}, which is not a plain marker")
        interior.append(v)
        h = d.strand_partner(t)
    labels = [d.label.get(v) for v in interior]
    for h in edges:
        d.delete_edge(h)
    for v in interior:
        d.remove_vertex(v)
    return labels

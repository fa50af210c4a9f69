"""Kauffman bracket and a small catalog of reference links.

The bracket is evaluated by a state sum that smooths crossings one at a time
in breadth-first order, merging partial states that leave the same pairing of
loose strand ends.  Link types are compared through the writhe-normalized
bracket, up to mirror image and up to reversing K2 (the normalized bracket of a
two-component link depends on the relative orientation of its components).
"""

from __future__ import annotations

import os
from collections import deque
from functools import lru_cache

from .diagram import DiagramError, PlanarDiagram
from .laurent import DELTA, LaurentPolynomial
from .templates import closed_braid, torus_minimal

DEFAULT_CAP = 24


class CrossingCapExceeded(DiagramError):
    """The diagram has more crossings than the configured cap."""


def crossing_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("LINKWEAVE_CAP")
    return int(env) if env else DEFAULT_CAP


def _strip_markers(d: PlanarDiagram) -> tuple[PlanarDiagram, int]:
    """Copy of ``d`` without markers; returns it with the number of
    crossingless strand cycles that disappeared."""
    d = d.copy()
    extra = 0
    for v in d.markers:
        if v not in d.rot:
            continue
        if any(d.he_comp[h] == 0 for h in d.rot[v]):
            raise DiagramError("bridges must be removed before evaluating invariants")
        r = d.rot[v]
        if d.twin[r[0]] in r:
            # a marker alone on a loop edge
            extra += 1
            for h in r:
                d.twin.pop(h, None)
            d.remove_vertex(v)
            continue
        d.dissolve(v)
    return d, extra


def kauffman_bracket(d: PlanarDiagram, cap: int | None = None) -> LaurentPolynomial:
    """Bracket with loop value ``-A^2 - A^-2`` and a single loop normalized to 1."""
    d.require_valid()
    limit = crossing_cap(cap)
    n = len(d.crossings)
    if n > limit:
        raise CrossingCapExceeded(f"{n} crossings exceed the cap of {limit}")
    g, lost_loops = _strip_markers(d)
    free = len(g.loops) + lost_loops
    xs = g.crossings
    if not xs:
        return DELTA ** (free - 1)

    order = _bfs_order(g, xs)
    processed: set[int] = set()
    # state: (frozenset of loose-end pairs, closed_any) -> polynomial
    states: dict[tuple[frozenset, bool], LaurentPolynomial] = {
        (frozenset(), False): LaurentPolynomial.constant(1)
    }
    a_term = LaurentPolynomial.monomial(1)
    b_term = LaurentPolynomial.monomial(-1)
    for v in order:
        r = g.rot[v]
        p = g.over[v]
        u = (p + 1) % 4
        smoothings = (
            (((u, (u + 1) % 4), ((u + 2) % 4, (u + 3) % 4)), a_term),
            ((((u + 1) % 4, (u + 2) % 4), ((u + 3) % 4, u)), b_term),
        )
        processed.add(v)
        new_states: dict[tuple[frozenset, bool], LaurentPolynomial] = {}
        for (pairs, closed_any), poly in states.items():
            for smoothing, weight in smoothings:
                links: dict[int, list[int]] = {}

                def link(x, y):
                    links.setdefault(x, []).append(y)
                    links.setdefault(y, []).append(x)

                for x, y in pairs:
                    link(x, y)
                for i, j in smoothing:
                    link(r[i], r[j])
                for h in r:
                    t = g.twin[h]
                    if g.he_vertex[t] in processed and (t not in r or h < t):
                        link(h, t)
                seen: set[int] = set()
                new_pairs = []
                for h in sorted(x for x in links if len(links[x]) == 1):
                    if h not in seen:
                        new_pairs.append((h, _walk_to_end(links, h, seen)))
                loops = 0
                for h in links:
                    if h in seen:
                        continue
                    loops += 1
                    stack = [h]
                    while stack:
                        x = stack.pop()
                        if x in seen:
                            continue
                        seen.add(x)
                        stack.extend(links[x])
                factor = weight
                c_any = closed_any
                for _ in range(loops):
                    if c_any:
                        factor = factor * DELTA
                    c_any = True
                key = (frozenset(new_pairs), c_any)
                val = poly * factor
                new_states[key] = new_states.get(key, LaurentPolynomial()) + val
        states = {k: v for k, v in new_states.items() if not v.is_zero()}
    total = LaurentPolynomial()
    for (pairs, closed_any), poly in states.items():
        assert not pairs and closed_any
        total = total + poly
    return total * DELTA ** free if free else total


def _walk_to_end(links: dict[int, list[int]], start: int, seen: set[int]) -> int:
    prev, cur = None, start
    while True:
        seen.add(cur)
        nbrs = links[cur]
        if prev is not None and len(nbrs) == 1:
            return cur
        if prev is None:
            nxt = nbrs[0]
        else:
            nxt = nbrs[1] if nbrs[0] == prev else nbrs[0]
        prev, cur = cur, nxt


def _bfs_order(g: PlanarDiagram, xs: list[int]) -> list[int]:
    order: list[int] = []
    seen: set[int] = set()
    for s in xs:
        if s in seen:
            continue
        seen.add(s)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for h in g.rot[v]:
                w = g.he_vertex[g.twin[h]]
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def normalized_invariant(d: PlanarDiagram, cap: int | None = None) -> LaurentPolynomial:
    """``(-A^3)^(-writhe) <D>``."""
    bracket = kauffman_bracket(d, cap)
    w = d.writhe()
    unit = LaurentPolynomial.monomial(-3 * w, -1 if w % 2 else 1)
    return unit * bracket


# ---------------------------------------------------------------------------
# reference catalog


def reference_diagram(name: str) -> PlanarDiagram:
    if name == "unlink2":
        d = PlanarDiagram()
        d.loops = [1, 2]
        return d
    if name == "hopf":
        return torus_minimal(1)
    if name == "solomon":
        return torus_minimal(2)
    if name == "whitehead":
        return closed_braid([1, -2, 1, -2, -2], 3)
    if name.startswith("torus"):
        return torus_minimal(_torus_n(name))
    raise KeyError(f"unknown link name {name!r}")


def _torus_n(name: str) -> int:
    # accepts "torus(2,2n)" style names with a concrete n, e.g. "torus(2,6)" or "torus3"
    digits = name[len("torus"):].strip("()")
    if "," in digits:
        two, twice_n = digits.split(",")
        if two.strip() != "2" or int(twice_n) % 2:
            raise KeyError(f"unsupported torus link {name!r}")
        return int(twice_n) // 2
    return int(digits)


CATALOG_NAMES = ("unlink2", "hopf", "solomon", "whitehead")


@lru_cache(maxsize=None)
def catalog_values(name: str) -> frozenset[LaurentPolynomial]:
    """All normalized values the named link takes over mirror image and K2 reversal."""
    ref = reference_diagram(name)
    values = set()
    for dd in (ref, ref.reversed(2)):
        f = normalized_invariant(dd, cap=10**6)
        values.add(f)
        values.add(f.substitute_inverse())
    return frozenset(values)


def catalog_self_check(names=CATALOG_NAMES + ("torus(2,6)",)) -> None:
    vals = {n: catalog_values(n) for n in names}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if vals[a] & vals[b]:
                raise AssertionError(f"catalog entries {a} and {b} collide")


def same_link_proxy(d: PlanarDiagram, name: str, cap: int | None = None) -> bool:
    return normalized_invariant(d, cap) in catalog_values(name)

"""Which link families can have a given pair of non-self OU words.

Verdicts are ``"yes"``, ``"no"`` or ``"unknown"``.  Membership in the
unlink, Hopf, Solomon and Whitehead families (and split/non-split) is decided
exactly by counting letters.  For the (2, 2n) torus links only necessary
conditions are known, so apart from the alternating witness the answer is
``"no"`` or ``"unknown"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .words import WordError, WordPair, count, is_alternating, is_well_balanced

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class RealizabilityReport:
    realizable_any: bool
    parity_class: str  # "even", "odd" or "not-realizable"
    trivial: str
    hopf: str
    solomon: str
    whitehead: str
    split: str
    nonsplit: str
    lk_candidates: frozenset[int]
    torus: dict[int, str] = field(default_factory=dict)

    def verdict(self, family: str) -> str:
        if family == "any":
            return YES if self.realizable_any else NO
        return getattr(self, family)

    def to_json(self) -> dict:
        return {
            "realizable_any": self.realizable_any,
            "parity_class": self.parity_class,
            "trivial": self.trivial,
            "hopf": self.hopf,
            "solomon": self.solomon,
            "whitehead": self.whitehead,
            "split": self.split,
            "nonsplit": self.nonsplit,
            "lk_candidates": sorted(self.lk_candidates),
            "torus": {str(n): v for n, v in sorted(self.torus.items())},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _yn(flag: bool) -> str:
    return YES if flag else NO


def lk_candidates(p: WordPair) -> frozenset[int]:
    """Linking numbers allowed by the letter counts of ``w1``."""
    if not is_well_balanced(p):
        raise WordError(f"pair {p} is not well-balanced")
    o, u = count(p.w1)
    bound = min(o, u)
    return frozenset(n for n in range(-bound, bound + 1) if (n - o) % 2 == 0)


def splitting_lower_bound_check(p: WordPair, sp: int) -> bool:
    """Whether a link of splitting number ``sp`` may have the words ``p``."""
    if not is_well_balanced(p):
        raise WordError(f"pair {p} is not well-balanced")
    if sp < 0:
        raise ValueError("splitting number must be non-negative")
    return sp <= min(count(p.w1))


def torus_verdict(p: WordPair, n: int) -> str:
    if n < 1:
        raise ValueError("torus parameter must be positive")
    if not is_well_balanced(p):
        return NO
    o, u = count(p.w1)
    if (n - o) % 2 or n > min(o, u):
        return NO
    w = p.w1.word
    if len(w) == 2 * n and p.w1 == p.w2 and is_alternating(w):
        return YES
    return UNKNOWN


def classify(p: WordPair, torus_ns: Iterable[int] = ()) -> RealizabilityReport:
    ok = is_well_balanced(p)
    o, u = count(p.w1)
    even = o % 2 == 0
    trivial = ok and even
    big = ok and even and o >= 2 and u >= 2
    return RealizabilityReport(
        realizable_any=ok,
        parity_class=("even" if even else "odd") if ok else "not-realizable",
        trivial=_yn(trivial),
        hopf=_yn(ok and not even),
        solomon=_yn(big),
        whitehead=_yn(big),
        split=_yn(trivial),
        nonsplit=_yn(ok and o >= 1 and u >= 1),
        lk_candidates=lk_candidates(p) if ok else frozenset(),
        torus={n: torus_verdict(p, n) for n in sorted(set(torus_ns))},
    )


def failed_condition(p: WordPair, family: str) -> str | None:
    """Human-readable reason why ``family`` is ``no`` for ``p`` (None if it is yes)."""
    if not is_well_balanced(p):
        return "pair is not well-balanced"
    o, u = count(p.w1)
    if family in ("any",):
        return None
    if family in ("trivial", "split"):
        return None if o % 2 == 0 else "#O(w1) even violated"
    if family == "hopf":
        return None if o % 2 == 1 else "#O(w1) odd violated"
    if family in ("solomon", "whitehead"):
        if o % 2:
            return "#O(w1) even violated"
        if o < 2:
            return "#O(w1) ≥ 2 violated"
        if u < 2:
            return "#U(w1) ≥ 2 violated"
        return None
    if family == "nonsplit":
        if o < 1:
            return "#O(w1) ≥ 1 violated"
        if u < 1:
            return "#U(w1) ≥ 1 violated"
        return None
    raise ValueError(f"unknown family {family!r}")

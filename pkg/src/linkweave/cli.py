"""Command-line interface: ``linkweave classify|synthesize|verify|enumerate``.

Exit codes: 0 success, 2 unparseable input, 3 family not realizable,
4 internal synthesis failure, 5 verification failure.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from .classifier import classify, failed_condition, lk_candidates
from .diagram import (
    DiagramError,
    PlanarDiagram,
    component_phi,
    linking_number,
    predict_self_crossing,
    self_crossing_census,
)
from .invariants import CrossingCapExceeded, crossing_cap, same_link_proxy
from .synthesizer import PreconditionError, SynthesisError, synthesize
from .words import CyclicWord, WordError, WordPair, canonical_rotation, is_well_balanced

EXIT_OK, EXIT_PARSE, EXIT_NOT_REALIZABLE, EXIT_INTERNAL, EXIT_VERIFY = 0, 2, 3, 4, 5
FAMILY_CHOICES = ("any", "trivial", "hopf", "solomon", "whitehead", "split", "nonsplit")
MAX_ENUMERATE = 10

# link-type oracle name and the linking numbers the link type forces
_ORACLE = {
    "trivial": ("unlink2", {0}),
    "split": ("unlink2", {0}),
    "hopf": ("hopf", {-1, 1}),
    "solomon": ("solomon", {-2, 2}),
    "whitehead": ("whitehead", {0}),
}


@dataclass
class RunConfig:
    command: str
    pair: Optional[str] = None
    max_length: Optional[int] = None
    family: str = "any"
    torus: list[int] = field(default_factory=list)
    out: Optional[str] = None
    dot: Optional[str] = None
    cap: Optional[int] = None
    path: Optional[str] = None


@dataclass
class Check:
    name: str
    ok: Optional[bool]  # None: informational or skipped
    detail: str

    def line(self) -> str:
        status = {True: "PASS", False: "FAIL", None: "INFO"}[self.ok]
        return f"{status} {self.name}: {self.detail}"


def verify_diagram(
    d: PlanarDiagram,
    expected: Optional[WordPair] = None,
    family: Optional[str] = None,
    cap: Optional[int] = None,
) -> list[Check]:
    """Re-derive everything checkable about ``d`` and compare with expectations."""
    problems = d.validate(allow_markers=False)
    checks = [Check("structure", not problems, "ok" if not problems else ", ".join(problems))]
    if problems:
        return checks
    w1, w2 = d.words()
    got = WordPair(CyclicWord(w1), CyclicWord(w2))
    if expected is None:
        checks.append(Check("words", None, f"({w1}, {w2})"))
    else:
        checks.append(Check("words", got == expected, f"({w1}, {w2}) expected {expected}"))
    lk = linking_number(d)
    lk_ok = lk in lk_candidates(got)
    checks.append(Check("linking number", lk_ok, f"{lk} in {sorted(lk_candidates(got))}"))
    phi1, phi2 = component_phi(d, 1), component_phi(d, 2)
    checks.append(Check("component phi", None, f"phi(K1)={phi1}, phi(K2)={phi2}"))
    census = self_crossing_census(d)
    predicted = predict_self_crossing(got)
    consistent = not predicted or census != (0, 0)
    checks.append(Check("self-crossings", consistent,
                        f"census={census}, self-crossing predicted={'yes' if predicted else 'no'}"))
    if family in _ORACLE:
        name, forced = _ORACLE[family]
        checks.append(Check("family linking number", lk in forced, f"{lk} in {sorted(forced)}"))
        try:
            checks.append(Check("link type", same_link_proxy(d, name, cap), f"bracket matches {name}"))
        except CrossingCapExceeded as err:
            checks.append(Check("link type", None, f"skipped: {err}"))
    return checks


# ---------------------------------------------------------------------------
# commands


def _parse_pair(text: str) -> WordPair:
    return WordPair.parse(text.strip())


def cmd_classify(cfg: RunConfig) -> int:
    try:
        p = _parse_pair(cfg.pair or "")
    except WordError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    print(classify(p, cfg.torus).dumps())
    return EXIT_OK


def cmd_synthesize(cfg: RunConfig) -> int:
    try:
        p = _parse_pair(cfg.pair or "")
    except WordError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    reason = failed_condition(p, cfg.family)
    if reason:
        print(f"not realizable as {cfg.family}: {reason}", file=sys.stderr)
        return EXIT_NOT_REALIZABLE
    provenance: list = []
    try:
        d = synthesize(p, cfg.family, provenance)
    except PreconditionError as err:
        print(f"not realizable as {cfg.family}: {err}", file=sys.stderr)
        return EXIT_NOT_REALIZABLE
    except (SynthesisError, DiagramError) as err:
        dump = getattr(err, "dump", {})
        print(f"internal synthesis failure: {err}", file=sys.stderr)
        if dump:
            print(json.dumps(dump, sort_keys=True), file=sys.stderr)
        return EXIT_INTERNAL
    checks = verify_diagram(d, p, cfg.family, cfg.cap)
    record = {
        "pair": f"{p.w1.word},{p.w2.word}",
        "family": cfg.family,
        "diagram": d.to_json(),
        "pd": d.pd_text(),
        "provenance": provenance[0].to_json() if provenance else None,
    }
    text = json.dumps(record, indent=1, sort_keys=True) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.dot:
        with open(cfg.dot, "w") as fh:
            fh.write(d.to_dot())
    report = sys.stderr if not cfg.out else sys.stdout
    for c in checks:
        print(c.line(), file=report)
    return EXIT_VERIFY if any(c.ok is False for c in checks) else EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    try:
        with open(cfg.path or "") as fh:
            data = json.load(fh)
        d = PlanarDiagram.from_json(data["diagram"] if "diagram" in data else data)
        expected = _parse_pair(cfg.pair) if cfg.pair else None
    except (OSError, ValueError, KeyError, DiagramError, WordError) as err:
        print(f"error: cannot read diagram: {err}", file=sys.stderr)
        return EXIT_PARSE
    family = cfg.family if cfg.family != "any" else None
    checks = verify_diagram(d, expected, family, cfg.cap)
    for c in checks:
        print(c.line())
    return EXIT_VERIFY if any(c.ok is False for c in checks) else EXIT_OK


def _words_of_length(n: int) -> list[str]:
    return sorted({canonical_rotation("".join(t)) for t in itertools.product("OU", repeat=n)})


def cmd_enumerate(cfg: RunConfig) -> int:
    top = cfg.max_length if cfg.max_length is not None else 0
    if top < 0 or top % 2 or top > MAX_ENUMERATE:
        print(f"error: max length must be even and at most {MAX_ENUMERATE}", file=sys.stderr)
        return EXIT_PARSE
    rows = []
    failures: list[str] = []
    for n in range(0, top + 1, 2):
        words = _words_of_length(n)
        row = {"length": n, "pairs": 0, "well_balanced": 0, "admissible": 0,
               "verified": 0, "over_cap": 0, "failed": 0}
        for w1, w2 in itertools.product(words, words):
            p = WordPair.of(w1, w2)
            row["pairs"] += 1
            if not is_well_balanced(p):
                continue
            row["well_balanced"] += 1
            if failed_condition(p, cfg.family):
                continue
            row["admissible"] += 1
            try:
                d = synthesize(p, cfg.family)
                checks = verify_diagram(d, p, _effective_family(p, cfg.family), cfg.cap)
            except (SynthesisError, DiagramError, PreconditionError) as err:
                row["failed"] += 1
                failures.append(f"{w1},{w2}: {err}")
                continue
            if any(c.ok is False for c in checks):
                row["failed"] += 1
                failures.append(f"{w1},{w2}: " + "; ".join(c.line() for c in checks if c.ok is False))
            elif any(c.name == "link type" and c.ok is None for c in checks):
                row["over_cap"] += 1
            else:
                row["verified"] += 1
        rows.append(row)
    cols = ["length", "pairs", "well_balanced", "admissible", "verified", "over_cap", "failed"]
    print(f"family={cfg.family} cap={crossing_cap(cfg.cap)}")
    print(" ".join(f"{c:>13s}" for c in cols))
    for row in rows:
        print(" ".join(f"{row[c]:>13d}" for c in cols))
    total = {c: sum(r[c] for r in rows) for c in cols[1:]}
    print(" ".join([f"{'total':>13s}"] + [f"{total[c]:>13d}" for c in cols[1:]]))
    for f in failures:
        print(f"FAIL {f}")
    return EXIT_VERIFY if failures else EXIT_OK


def _effective_family(p: WordPair, family: str) -> str:
    """The concrete family ``synthesize`` builds for a selector such as ``any``."""
    odd = p.w1.word.count("O") % 2 == 1
    if family == "any":
        return "hopf" if odd else "trivial"
    if family == "nonsplit":
        return "hopf" if odd else "solomon"
    return family


# ---------------------------------------------------------------------------
# argument parsing


def _torus_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad torus list {text!r}")
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("torus parameters must be positive")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linkweave", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family=True):
        if family:
            p.add_argument("--family", choices=FAMILY_CHOICES, default="any")
        p.add_argument("--cap", type=int, default=None, help="crossing cap for the bracket oracle")

    p = sub.add_parser("classify", help="report family membership for a word pair")
    p.add_argument("pair", help='pair as "w1,w2", e.g. "OUOU,OOUU"')
    p.add_argument("--torus", type=_torus_list, default=[], help="comma-separated n values")

    p = sub.add_parser("synthesize", help="build a diagram realizing a word pair")
    p.add_argument("pair")
    common(p)
    p.add_argument("--out", help="write diagram JSON here instead of stdout")
    p.add_argument("--dot", help="also write a DOT graph here")

    p = sub.add_parser("verify", help="check a diagram JSON file")
    p.add_argument("path")
    p.add_argument("--pair", help="expected word pair")
    common(p)

    p = sub.add_parser("enumerate", help="synthesize and verify every pair up to a length")
    p.add_argument("--max-length", type=int, required=True)
    common(p)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    cfg = RunConfig(
        command=args.command,
        pair=getattr(args, "pair", None),
        max_length=getattr(args, "max_length", None),
        family=getattr(args, "family", "any"),
        torus=getattr(args, "torus", []),
        out=getattr(args, "out", None),
        dot=getattr(args, "dot", None),
        cap=getattr(args, "cap", None),
        path=getattr(args, "path", None),
    )
    handler = {"classify": cmd_classify, "synthesize": cmd_synthesize,
               "verify": cmd_verify, "enumerate": cmd_enumerate}[cfg.command]
    return handler(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line front end.

    hurwitz validate "o0 <-[4]- o0 : 2,2|2,2|3,1"
    hurwitz decide "o0 <-[4]- o0 : 2,2|2,2|3,1"
    hurwitz orbifold "o0 <-[4]- o0 : 2,2|2,2|3,1"
    hurwitz enumerate --base o0 --degrees 4..4 --format csv
    hurwitz campaign --base o0 --degrees 2..6 [--audit]
    hurwitz audit --base o0 --degrees 2..6 --deterministic
    hurwitz conjecture --max-prime 7

Every flag can also be given through an environment variable named
``HURWITZ_<FLAG>`` (e.g. ``HURWITZ_BUDGET_NODES``); flags win.

Exit codes: validate 0 valid / 2 invalid; decide 0 realizable / 1
exceptional / 3 unknown / 2 invalid; campaigns 0 clean / 1 conflicts;
64 on unparseable input.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from typing import Optional, Sequence

from .core import DegreeMismatch, ParseError, Realizable, Surface, parse_candidate_text
from .criteria import CriterionConflict, decide
from .harness import (
    CSV_COLUMNS,
    DEFAULT_MAX_BRANCHING_POINTS,
    _csv_line,
    format_table_row,
    row_json,
    run_campaign,
    verify_prime_conjecture,
)
from .orbifold import induced_orbifold_cover
from .permgroup import SearchBudget
from .validation import check_candidate, enumerate_candidates

EXIT_OK = 0
EXIT_EXCEPTIONAL = 1
EXIT_INVALID = 2
EXIT_UNKNOWN = 3
EXIT_CONFLICT = 70
EXIT_USAGE = 64


def _env(name: str, default=None):
    return os.environ.get("HURWITZ_" + name, default)


def _flag_bool(name: str) -> bool:
    return _env(name, "").lower() in ("1", "true", "yes", "on")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _degree_range(text: str) -> list[int]:
    """``4``, ``2..6`` or ``3,5,7``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree range {text!r}") from None
    if not out or min(out) < 2:
        raise argparse.ArgumentTypeError(f"degree range {text!r} must be nonempty with degrees >= 2")
    return out


def _surface(text: str) -> Surface:
    try:
        return Surface.parse(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-nodes", type=_positive_int, default=_env("BUDGET_NODES", 50_000_000))
    common.add_argument("--budget-secs", type=_positive_float, default=_env("BUDGET_SECS"))
    common.add_argument("--workers", type=_positive_int, default=_env("WORKERS", 1))
    common.add_argument("--cache", default=_env("CACHE"))
    common.add_argument("--format", choices=["json", "csv", "table"], default=_env("FORMAT", "table"))
    common.add_argument("--audit", action="store_true", default=_flag_bool("AUDIT"))
    common.add_argument("--deterministic", action="store_true", default=_flag_bool("DETERMINISTIC"))

    p = argparse.ArgumentParser(prog="hurwitz", description="Realizability of candidate surface branched covers.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, help_ in [
        ("validate", "check the necessary conditions"),
        ("decide", "decide realizability"),
        ("orbifold", "show the induced orbifold cover"),
    ]:
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("candidate", help="e.g. 'o0 <-[4]- o0 : 2,2|2,2|3,1'")

    for name, help_ in [
        ("enumerate", "list every valid candidate"),
        ("campaign", "decide every candidate"),
        ("audit", "decide every candidate and cross-check all criteria against the search"),
    ]:
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--base", type=_surface, default=_env("BASE", "o0"))
        s.add_argument("--degrees", type=_degree_range, default=_env("DEGREES", "2..6"))
        s.add_argument("--max-points", type=_positive_int, default=_env("MAX_POINTS", DEFAULT_MAX_BRANCHING_POINTS))

    s = sub.add_parser("conjecture", parents=[common], help="search every prime-degree sphere candidate")
    s.add_argument("--max-prime", type=_positive_int, default=_env("MAX_PRIME", 7))
    s.add_argument("--max-points", type=_positive_int, default=_env("MAX_POINTS", DEFAULT_MAX_BRANCHING_POINTS))
    return p


def _budget(args) -> SearchBudget:
    return SearchBudget(args.budget_nodes, args.budget_secs)


def _parse(text: str):
    try:
        return parse_candidate_text(text)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        print(f"  {exc.text}\n  {' ' * (exc.column - 1)}^", file=sys.stderr)
        return None


def _check(text: str, out):
    raw = _parse(text)
    if raw is None:
        return None, EXIT_USAGE
    try:
        report = check_candidate(*raw)
    except (DegreeMismatch, ValueError) as exc:
        print(f"invalid: {exc}", file=out)
        return None, EXIT_INVALID
    return report, None


def cmd_validate(args, out) -> int:
    report, code = _check(args.candidate, out)
    if report is None:
        return code
    if args.format == "json":
        doc = {
            "valid": report.valid,
            "checks": [{"condition": c.condition, "passed": c.passed, "detail": c.detail} for c in report.checks],
            "notes": report.notes,
        }
        print(json.dumps(doc, sort_keys=True), file=out)
    else:
        print(report, file=out)
        print("valid" if report.valid else "invalid", file=out)
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_decide(args, out) -> int:
    report, code = _check(args.candidate, out)
    if report is None:
        return code
    if not report.valid:
        print(report, file=out)
        return EXIT_INVALID
    c = report.candidate
    t0 = time.perf_counter()
    try:
        v = decide(c, _budget(args), audit=args.audit, strict=True, witness=True)
    except CriterionConflict as exc:
        print(f"criterion conflict: {exc}", file=sys.stderr)
        return EXIT_CONFLICT
    elapsed = None if args.deterministic else round((time.perf_counter() - t0) * 1000, 3)
    doc = {"candidate": str(c), "verdict": v.kind, "method": v.method, "elapsed_ms": elapsed}
    if isinstance(v, Realizable) and v.witness is not None:
        doc["witness"] = dict(v.witness.to_json(), cycles=v.witness.to_text())
    if v.kind == "unknown":
        doc["reason"] = v.reason
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True), file=out)
    else:
        print(f"{c}: {v.kind} ({v.method or doc.get('reason')})", file=out)
        if "witness" in doc:
            print(f"witness: {doc['witness']['cycles']}", file=out)
    return {"realizable": EXIT_OK, "exceptional": EXIT_EXCEPTIONAL}.get(v.kind, EXIT_UNKNOWN)


def cmd_orbifold(args, out) -> int:
    report, code = _check(args.candidate, out)
    if report is None:
        return code
    if not report.valid:
        print(report, file=out)
        return EXIT_INVALID
    c = report.candidate
    up, down = induced_orbifold_cover(c)
    multiplicative = up.chi_orb == c.degree * down.chi_orb
    if args.format == "json":
        doc = {"cover": up.to_json(), "base": down.to_json(), "degree": c.degree, "multiplicative": multiplicative}
        print(json.dumps(doc, sort_keys=True), file=out)
    else:

        def show(x):
            geom = x.geometry if x.surface.orientable else "non-orientable"
            return f"{x} [{x.chi_orb}, {geom}]"

        print(f"{show(up)} over {show(down)}", file=out)
        print(f"chi_orb(cover) = {up.chi_orb} {'=' if multiplicative else '!='} {c.degree} * {down.chi_orb}", file=out)
    return EXIT_OK


class _Streamer:
    """Prints rows as they are produced in the requested format."""

    def __init__(self, fmt, out):
        self.fmt = fmt
        self.out = out
        self.writer = csv.writer(out, lineterminator="\n") if fmt == "csv" else None
        if self.writer:
            self.writer.writerow(CSV_COLUMNS)

    def __call__(self, row):
        if self.fmt == "json":
            print(json.dumps(row_json(row), sort_keys=True), file=self.out)
        elif self.fmt == "csv":
            self.writer.writerow(_csv_line(row))
        else:
            print(format_table_row(row), file=self.out)
        self.out.flush()

    def summary(self, report):
        if self.fmt == "json":
            doc = {"summary": report.counts, "conflicts": report.conflicts, "unknown": report.unknown, "corpus": report.corpus}
            print(json.dumps(doc, sort_keys=True), file=self.out)
        elif self.fmt == "table":
            counts = report.counts
            print(
                f"# {report.corpus}: {len(report.rows)} candidates, {counts['realizable']} realizable, "
                f"{counts['exceptional']} exceptional, {counts['unknown']} unknown, {len(report.conflicts)} conflicts",
                file=self.out,
            )
            for x in report.unknown:
                print(f"# unknown: {x}", file=self.out)


def cmd_enumerate(args, out) -> int:
    n = 0
    w = csv.writer(out, lineterminator="\n") if args.format == "csv" else None
    if w:
        w.writerow(["candidate", "degree", "n"])
    for c in enumerate_candidates(args.base, args.degrees, args.max_points):
        n += 1
        if w:
            w.writerow([str(c), c.degree, c.n])
        elif args.format == "json":
            print(json.dumps({"candidate": str(c), "degree": c.degree, "n": c.n}), file=out)
        else:
            print(c, file=out)
    if args.format == "table":
        print(f"# {n} candidates", file=out)
    return EXIT_OK


def _campaign(args, out, mode) -> int:
    stream = _Streamer(args.format, out)
    report = run_campaign(
        args.base,
        args.degrees,
        args.max_points,
        _budget(args),
        mode=mode,
        workers=1 if args.deterministic else args.workers,
        cache=args.cache,
        deterministic=args.deterministic,
        on_row=stream,
    )
    stream.summary(report)
    for x in report.conflicts:
        print(f"conflict: {x}", file=sys.stderr)
    return EXIT_OK if report.ok else 1


def cmd_campaign(args, out) -> int:
    return _campaign(args, out, "audit" if args.audit else "fast")


def cmd_audit(args, out) -> int:
    return _campaign(args, out, "audit")


def cmd_conjecture(args, out) -> int:
    stream = _Streamer(args.format, out)
    try:
        report = verify_prime_conjecture(
            args.max_prime,
            _budget(args),
            args.max_points,
            workers=1 if args.deterministic else args.workers,
            cache=args.cache,
            deterministic=args.deterministic,
            on_row=stream,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    stream.summary(report)
    for x in report.conflicts:
        print(f"conflict: {x}", file=sys.stderr)
    return EXIT_OK if report.ok else 1


COMMANDS = {
    "validate": cmd_validate,
    "decide": cmd_decide,
    "orbifold": cmd_orbifold,
    "enumerate": cmd_enumerate,
    "campaign": cmd_campaign,
    "audit": cmd_audit,
    "conjecture": cmd_conjecture,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    # argparse runs string defaults (the env fallbacks) through type= as well
    return COMMANDS[args.command](args, out)


if __name__ == "__main__":
    sys.exit(main())

"""Batch campaigns over enumerated candidates, with an append-only result
cache and report output in JSON, CSV or a plain text table."""
from __future__ import annotations

import csv
import io
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .core import METHODS, SPHERE, CandidateCover, Realizable, Surface
from .criteria import audit_candidate, decide
from .permgroup import MonodromyWitness, SearchBudget, realizable_by_search, verify_witness
from .validation import enumerate_candidates, parse_candidate

log = logging.getLogger(__name__)

CACHE_VERSION = 1
DEFAULT_MAX_BRANCHING_POINTS = 4
AUDIT_DEGREE_CEILING = 8
# exhaustive search stays in seconds up to here
SEARCH_CEILING = 11


@dataclass
class Row:
    candidate: str
    degree: int
    n: int
    verdict: str
    method: Optional[str]
    witness: Optional[dict] = None
    elapsed_ms: Optional[float] = None
    cached: bool = False

    @property
    def witness_text(self) -> str:
        if not self.witness:
            return ""
        return MonodromyWitness.from_json(self.witness).to_text()


@dataclass
class CampaignReport:
    corpus: str
    rows: list[Row] = field(default_factory=list)
    conflicts: list[str] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        out = {"realizable": 0, "exceptional": 0, "unknown": 0}
        for r in self.rows:
            out[r.verdict] += 1
        return out

    @property
    def unknown(self) -> list[str]:
        return [r.candidate for r in self.rows if r.verdict == "unknown"]

    @property
    def ok(self) -> bool:
        return not self.conflicts


class ResultCache:
    """Line-delimited JSON verdict records keyed by canonical candidate text
    and campaign mode. Records with another ``version`` are ignored."""

    def __init__(self, path: str):
        self.path = path
        self.records: dict[tuple[str, str], dict] = {}
        if os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        rec = json.loads(line)
                    except json.JSONDecodeError:
                        log.warning("skipping corrupt cache line in %s", path)
                        continue
                    if rec.get("version") == CACHE_VERSION:
                        self.records[(rec["candidate"], rec.get("mode", "fast"))] = rec

    def get(self, c: CandidateCover, mode: str) -> Optional[dict]:
        return self.records.get((str(c.canonical()), mode))

    def put(self, c: CandidateCover, mode: str, row: Row, conflicts: list[str]):
        rec = {
            "candidate": str(c.canonical()),
            "verdict": row.verdict,
            "method": row.method,
            "mode": mode,
            "version": CACHE_VERSION,
        }
        if row.witness:
            rec["witness"] = row.witness
        if conflicts:
            rec["conflicts"] = conflicts
        self.records[(rec["candidate"], mode)] = rec
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def _row_for(c: CandidateCover, verdict, witness, elapsed) -> Row:
    return Row(
        candidate=str(c),
        degree=c.degree,
        n=c.n,
        verdict=verdict.kind,
        method=verdict.method,
        witness=witness.to_json() if witness is not None else None,
        elapsed_ms=elapsed,
    )


def _work(args) -> tuple[Row, list[str]]:
    c, mode, budget, timed = args
    t0 = time.perf_counter()
    conflicts: list[str] = []
    if mode == "audit":
        a = audit_candidate(c, budget)
        conflicts = list(a.conflicts)
        # on conflict the search verdict takes precedence
        verdict = a.verdict if conflicts else a.pipeline_verdict
        witness = a.search.witness if isinstance(a.search, Realizable) else None
    elif mode == "search":
        verdict = realizable_by_search(c, budget)
        witness = verdict.witness if isinstance(verdict, Realizable) else None
    else:
        verdict = decide(c, budget)
        witness = verdict.witness if isinstance(verdict, Realizable) else None
    elapsed = round((time.perf_counter() - t0) * 1000, 3) if timed else None
    if witness is not None and not verify_witness(c, witness):
        conflicts.append(f"{c}: witness {witness} fails verification")
    return _row_for(c, verdict, witness, elapsed), conflicts


def _row_from_cache(c: CandidateCover, rec: dict) -> tuple[Row, list[str]]:
    row = Row(str(c), c.degree, c.n, rec["verdict"], rec.get("method"), rec.get("witness"), None, True)
    conflicts = list(rec.get("conflicts", []))
    if row.witness is not None:
        w = MonodromyWitness.from_json(row.witness)
        if not verify_witness(c, w):
            conflicts.append(f"{c}: cached witness fails verification")
    return row, conflicts


def run_candidates(
    candidates: Iterable[CandidateCover],
    corpus: str,
    budget: Optional[SearchBudget] = None,
    mode: str = "fast",
    workers: int = 1,
    cache: Optional[str] = None,
    deterministic: bool = True,
    on_row: Optional[Callable[[Row], None]] = None,
) -> CampaignReport:
    """Decide ``candidates`` and collect a report in candidate order."""
    if mode not in ("fast", "audit", "search"):
        raise ValueError(f"unknown mode {mode!r}")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    budget = budget or SearchBudget()
    store = ResultCache(cache) if cache else None
    report = CampaignReport(corpus)
    candidates = list(candidates)
    cached = {}
    if store:
        for i, c in enumerate(candidates):
            rec = store.get(c, mode)
            if rec is not None:
                cached[i] = _row_from_cache(c, rec)
    todo = [i for i in range(len(candidates)) if i not in cached]
    jobs = [(candidates[i], mode, budget, not deterministic) for i in todo]

    def ordered_results(computed):
        computed = iter(computed)
        for i, c in enumerate(candidates):
            if i in cached:
                yield cached[i]
                continue
            res = next(computed)
            if store:
                store.put(c, mode, res[0], res[1])
            yield res

    if workers > 1 and not deterministic and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as ex:
            # map() yields in submission order, so the reduce stays deterministic
            for row, conflicts in ordered_results(ex.map(_work, jobs, chunksize=8)):
                _add(report, row, conflicts, on_row)
    else:
        for row, conflicts in ordered_results(map(_work, jobs)):
            _add(report, row, conflicts, on_row)
    return report


def _add(report, row, conflicts, on_row):
    report.rows.append(row)
    report.conflicts.extend(conflicts)
    if on_row is not None:
        on_row(row)


def run_campaign(
    base: Surface,
    degrees: Iterable[int],
    max_branching_points: int = DEFAULT_MAX_BRANCHING_POINTS,
    budget: Optional[SearchBudget] = None,
    mode: str = "fast",
    **kwargs,
) -> CampaignReport:
    """Enumerate every candidate over ``base`` and decide each one.

    ``mode="fast"`` runs the decision pipeline; ``mode="audit"`` also runs
    every criterion and the search oracle on each candidate and records any
    disagreement in ``report.conflicts``.
    """
    degrees = sorted(set(degrees))
    if not degrees:
        raise ValueError("empty degree range")
    corpus = f"base {base}, degrees {degrees[0]}..{degrees[-1]}, n <= {max_branching_points}, {mode}"
    cands = enumerate_candidates(base, degrees, max_branching_points)
    return run_candidates(cands, corpus, budget, mode, **kwargs)


def _primes_upto(m: int) -> list[int]:
    return [p for p in range(2, m + 1) if all(p % q for q in range(2, int(p**0.5) + 1))]


def verify_prime_conjecture(
    max_prime: int,
    budget: Optional[SearchBudget] = None,
    max_branching_points: int = DEFAULT_MAX_BRANCHING_POINTS,
    **kwargs,
) -> CampaignReport:
    """Search every sphere candidate of prime degree up to ``max_prime`` for a
    monodromy witness. Exceptional rows are counterexamples and are listed in
    ``report.conflicts``; Unknown rows are only listed in ``report.unknown``."""
    if max_prime > SEARCH_CEILING:
        raise ValueError(f"max_prime {max_prime} exceeds the search ceiling {SEARCH_CEILING}")
    primes = _primes_upto(max_prime)
    corpus = f"prime degrees {primes}, base o0, n <= {max_branching_points}"
    cands = enumerate_candidates(SPHERE, primes, max_branching_points)
    report = run_candidates(cands, corpus, budget, mode="search", **kwargs)
    for r in report.rows:
        if r.verdict == "exceptional":
            report.conflicts.append(f"counterexample to the prime-degree conjecture: {r.candidate}")
        elif r.verdict == "realizable" and not r.witness:
            report.conflicts.append(f"{r.candidate}: realizable without a witness")
    return report


# ---------------------------------------------------------------------------
# Output

CSV_COLUMNS = ["candidate", "degree", "n", "verdict", "method", "witness", "elapsed_ms"]


def row_json(row: Row) -> dict:
    out = {"candidate": row.candidate, "verdict": row.verdict, "method": row.method}
    if row.witness:
        out["witness"] = dict(row.witness, cycles=row.witness_text)
    out["elapsed_ms"] = row.elapsed_ms
    if row.cached:
        out["cached"] = True
    return out


def _csv_line(row: Row) -> list:
    elapsed = "" if row.elapsed_ms is None else row.elapsed_ms
    return [row.candidate, row.degree, row.n, row.verdict, row.method or "", row.witness_text, elapsed]


def emit_report(r: CampaignReport, fmt: str = "json") -> bytes:
    """Serialize a report. Output depends only on the report's contents."""
    if fmt == "json":
        doc = {
            "corpus": r.corpus,
            "methods": list(METHODS),
            "summary": r.counts,
            "conflicts": r.conflicts,
            "unknown": r.unknown,
            "rows": [row_json(row) for row in r.rows],
        }
        return (json.dumps(doc, indent=1, sort_keys=True) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in r.rows:
            w.writerow(_csv_line(row))
        return buf.getvalue().encode()
    if fmt in ("table", "text-table"):
        lines = [format_table_row(row) for row in r.rows]
        counts = r.counts
        lines.append(
            f"# {r.corpus}: {len(r.rows)} candidates, {counts['realizable']} realizable, "
            f"{counts['exceptional']} exceptional, {counts['unknown']} unknown, {len(r.conflicts)} conflicts"
        )
        lines += [f"# conflict: {x}" for x in r.conflicts]
        lines += [f"# unknown: {x}" for x in r.unknown]
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def format_table_row(row: Row) -> str:
    text = f"{row.candidate:<40} {row.verdict:<11} {row.method or '-':<24}"
    if row.witness:
        text += " " + row.witness_text
    return text.rstrip()


def load_report(data: bytes) -> CampaignReport:
    """Inverse of ``emit_report(r, "json")``."""
    doc = json.loads(data)
    report = CampaignReport(doc["corpus"], conflicts=list(doc["conflicts"]))
    for rj in doc["rows"]:
        c = parse_candidate(rj["candidate"])
        w = rj.get("witness")
        if w:
            w = {"degree": w["degree"], "perms": w["perms"]}
        report.rows.append(
            Row(rj["candidate"], c.degree, c.n, rj["verdict"], rj["method"], w, rj.get("elapsed_ms"), rj.get("cached", False))
        )
    return report


__all__ = [
    "CampaignReport",
    "ResultCache",
    "Row",
    "emit_report",
    "load_report",
    "run_campaign",
    "run_candidates",
    "verify_prime_conjecture",
]

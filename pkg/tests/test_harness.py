import csv
import io
import json

import pytest

from hurwitz.core import SPHERE, Surface
from hurwitz.harness import (
    CACHE_VERSION,
    CSV_COLUMNS,
    CampaignReport,
    ResultCache,
    emit_report,
    load_report,
    run_campaign,
    run_candidates,
    verify_prime_conjecture,
)
from hurwitz.permgroup import MonodromyWitness, SearchBudget, verify_witness
from hurwitz.validation import enumerate_candidates, parse_candidate


def test_fast_campaign_small():
    r = run_campaign(SPHERE, range(2, 5), 3)
    texts = [row.candidate for row in r.rows]
    assert "o0 <-[4]- o0 : 3,1|2,2|2,2" in texts
    row = r.rows[texts.index("o0 <-[4]- o0 : 3,1|2,2|2,2")]
    assert row.verdict == "exceptional"
    assert r.ok and not r.unknown
    assert sum(r.counts.values()) == len(r.rows)


def test_audit_campaign_has_no_conflicts():
    r = run_campaign(SPHERE, range(2, 5), 3, mode="audit")
    assert r.conflicts == []
    for row in r.rows:
        if row.verdict == "realizable":
            assert row.witness is not None
            assert verify_witness(parse_candidate(row.candidate), MonodromyWitness.from_json(row.witness))


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_candidates([], "x", mode="nope")
    with pytest.raises(ValueError):
        run_candidates([], "x", workers=0)
    with pytest.raises(ValueError):
        run_campaign(SPHERE, [])
    with pytest.raises(ValueError):
        verify_prime_conjecture(13)


def test_campaign_over_the_torus_needs_no_search():
    r = run_campaign(Surface(True, 1), range(2, 4), 2)
    assert r.rows and {row.method for row in r.rows} == {"thm.chi-nonpositive"}


def test_budget_exhaustion_is_reported_as_unknown():
    c = parse_candidate("o4 <-[12]- o0 : 12|12|4,4,3,1")
    r = run_candidates([c], "one", SearchBudget(max_nodes=10))
    assert r.unknown == [str(c)]
    assert r.ok
    text = emit_report(r, "table").decode()
    assert "# unknown: " + str(c) in text


def test_cache_resume(tmp_path):
    path = tmp_path / "cache.jsonl"
    cands = list(enumerate_candidates(SPHERE, range(2, 6), 3))
    first = run_candidates(cands[:10], "part", cache=str(path))
    assert not any(row.cached for row in first.rows)
    lines = path.read_text().splitlines()
    assert len(lines) == 10
    assert all(json.loads(x)["version"] == CACHE_VERSION for x in lines)
    second = run_candidates(cands, "all", cache=str(path))
    assert [row.cached for row in second.rows] == [True] * 10 + [False] * (len(cands) - 10)
    assert len(path.read_text().splitlines()) == len(cands)
    fresh = run_candidates(cands, "all")
    assert [(r.verdict, r.method) for r in second.rows] == [(r.verdict, r.method) for r in fresh.rows]
    # the mode is part of the key
    third = run_candidates(cands[:3], "audit", mode="audit", cache=str(path))
    assert not any(row.cached for row in third.rows)


def test_cache_ignores_junk_and_old_versions(tmp_path):
    path = tmp_path / "cache.jsonl"
    c = parse_candidate("o0 <-[4]- o0 : 2,2|2,2|3,1")
    path.write_text(
        "not json\n"
        + json.dumps({"candidate": str(c.canonical()), "verdict": "realizable", "method": "search", "mode": "fast", "version": 0})
        + "\n\n"
    )
    store = ResultCache(str(path))
    assert store.get(c, "fast") is None
    r = run_candidates([c], "x", cache=str(path))
    assert r.rows[0].verdict == "exceptional"


def test_tampered_cached_witness_is_a_conflict(tmp_path):
    path = tmp_path / "cache.jsonl"
    c = parse_candidate("o0 <-[2]- o0 : 2|2")
    run_candidates([c], "x", cache=str(path))
    rec = json.loads(path.read_text())
    rec["witness"] = {"degree": 2, "perms": [[2, 1], [1, 2]]}
    path.write_text(json.dumps(rec) + "\n")
    r = run_candidates([c], "x", cache=str(path))
    assert r.rows[0].cached and not r.ok


def test_workers_give_the_same_rows():
    cands = list(enumerate_candidates(SPHERE, range(2, 6), 3))
    one = run_candidates(cands, "x")
    two = run_candidates(cands, "x", workers=2, deterministic=False)
    assert [(r.candidate, r.verdict, r.method) for r in one.rows] == [(r.candidate, r.verdict, r.method) for r in two.rows]
    assert all(r.elapsed_ms is not None for r in two.rows)
    assert all(r.elapsed_ms is None for r in one.rows)


def test_on_row_streams_in_order():
    seen = []
    r = run_campaign(SPHERE, [4], 3, on_row=seen.append)
    assert seen == r.rows


def test_prime_conjecture_small():
    r = verify_prime_conjecture(5, max_branching_points=3)
    assert r.ok and r.rows
    assert all(row.verdict == "realizable" and row.witness for row in r.rows)


def test_json_report_schema_and_round_trip():
    r = run_campaign(SPHERE, range(2, 5), 3, mode="audit")
    data = emit_report(r, "json")
    doc = json.loads(data)
    assert set(doc) == {"corpus", "methods", "summary", "conflicts", "unknown", "rows"}
    assert "search" in doc["methods"]
    for row in doc["rows"]:
        assert {"candidate", "verdict", "method", "elapsed_ms"} <= set(row)
        if "witness" in row:
            assert set(row["witness"]) == {"degree", "perms", "cycles"}
    back = load_report(data)
    assert emit_report(back, "json") == data


def test_csv_report():
    r = run_campaign(SPHERE, [2, 3], 3)
    rows = list(csv.reader(io.StringIO(emit_report(r, "csv").decode())))
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == len(r.rows) + 1
    assert rows[1][0] == r.rows[0].candidate


def test_empty_reports():
    r = CampaignReport("nothing")
    assert emit_report(r, "csv").decode() == ",".join(CSV_COLUMNS) + "\n"
    assert json.loads(emit_report(r, "json"))["rows"] == []
    assert "0 candidates" in emit_report(r, "table").decode()
    with pytest.raises(ValueError):
        emit_report(r, "xml")


def test_deterministic_output_is_byte_identical():
    a = emit_report(run_campaign(SPHERE, range(2, 6), 4, mode="audit"), "json")
    b = emit_report(run_campaign(SPHERE, range(2, 6), 4, mode="audit"), "json")
    assert a == b

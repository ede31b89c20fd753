"""Batch campaigns: enumerate every candidate in a range, decide each one,
and cross-check every closed-form criterion against the search."""
from hurwitz.core import SPHERE
from hurwitz.harness import emit_report, run_campaign, verify_prime_conjecture

# Every sphere candidate of degree 2..6 with up to four branching points.
audit = run_campaign(SPHERE, range(2, 7), 4, mode="audit")
print(audit.corpus)
print(audit.counts, "conflicts:", len(audit.conflicts))

# The exceptional ones, with the criterion that caught them first.
for row in audit.rows:
    if row.verdict == "exceptional":
        print(f"  {row.candidate:<40} {row.method}")

# Prime degrees: every candidate has turned out realizable so far.
primes = verify_prime_conjecture(5, max_branching_points=3)
print(primes.corpus, primes.counts)

# Reports are plain bytes in JSON, CSV or a text table.
table = emit_report(primes, "table").decode().splitlines()
print("\n".join(table[:3] + ["..."] + table[-1:]))

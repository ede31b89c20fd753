"""A degree-4 cover of the sphere by the sphere, branched over three points
with local degrees (2,2), (2,2) and (3,1).

The branch data passes every necessary condition, yet no such cover exists.
This script shows the candidate being validated and then rejected by
several independent arguments."""
from hurwitz import decide, parse_candidate
from hurwitz.criteria import audit_candidate
from hurwitz.validation import check_candidate

TEXT = "o0 <-[4]- o0 : 2,2|2,2|3,1"

# -- 1. the candidate is consistent ------------------------------------------
c = parse_candidate(TEXT)
print(c)
report = check_candidate(c.cover, c.base, c.degree, c.partitions)
print(report)  # one line per necessary condition, all passing

# -- 2. the pipeline answer --------------------------------------------------
v = decide(c)
print("decide:", v.kind, "by", v.method)

# -- 3. everything that has an opinion ---------------------------------------
a = audit_candidate(c)
for cid, res in a.results.items():
    print(f"  {cid:<24} {res.verdict.kind:<12} {res.detail}")
print(f"  {'search':<24} {a.search.kind}")
print("conflicts:", a.conflicts or "none")

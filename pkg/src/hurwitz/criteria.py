"""Closed-form realizability criteria and the decision pipeline.

Each ``criterion_*`` function takes a valid candidate and returns an
:class:`~hurwitz.core.Applies` with a definite verdict, or None when the
underlying theorem says nothing about the candidate. Criteria that name
branching points by shape (``(2,...,2)`` first, and so on) try every way of
assigning the candidate's partitions to those roles.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .arith import is_loeschian, is_sum_of_two_squares  # noqa: F401 (re-export)
from .core import (
    SPHERE,
    TORUS,
    Applies,
    CandidateCover,
    Exceptional,
    HurwitzError,
    Partition,
    Realizable,
    Unknown,
    Verdict,
    euler_characteristic,
    is_definite,
)
from .orbifold import criterion_orbifold
from .permgroup import SearchBudget, realizable_by_search
from .validation import check_candidate, juxtaposition_splits

log = logging.getLogger(__name__)


class CriterionConflict(HurwitzError, RuntimeError):
    """Two definite verdicts disagree: one of the implementations is wrong."""


class NotApplicable(HurwitzError, ValueError):
    """A reduction was asked for outside its hypotheses."""


def _shape(*runs: tuple[int, int]) -> tuple[int, ...]:
    out = []
    for value, count in runs:
        out += [value] * count
    return tuple(out)


def _sphere_to_sphere(c: CandidateCover) -> bool:
    return c.base == SPHERE and c.cover == SPHERE


def _roles(c: CandidateCover):
    """Every ordering of the branching points, as tuples of parts."""
    return itertools.permutations([p.parts for p in c.partitions])


def criterion_chi_nonpositive(c: CandidateCover) -> Optional[Applies]:
    """Realizable when the base has ``chi <= 0``, or when the base is the
    projective plane and the cover is non-orientable."""
    chi = euler_characteristic(c.base)
    if chi <= 0:
        kind = "orientable" if c.base.orientable else "non-orientable"
        return Applies(Realizable("thm.chi-nonpositive"), "thm.chi-nonpositive", f"{kind} base with chi = {chi}")
    if not c.base.orientable and c.base.genus == 1 and not c.cover.orientable:
        return Applies(Realizable("thm.chi-nonpositive"), "thm.chi-nonpositive", "projective plane base, non-orientable cover")
    return None


def criterion_53(c: CandidateCover) -> Optional[Applies]:
    """Data ``(2,...,2), (5,3,2,...,2), P3`` over the sphere, ``d >= 8`` even."""
    d = c.degree
    if c.base != SPHERE or c.n != 3 or d < 8 or d % 2:
        return None
    twos = _shape((2, d // 2))
    five_three = _shape((5, 1), (3, 1), (2, (d - 8) // 2))
    for p1, p2, p3 in _roles(c):
        if p1 != twos or p2 != five_three:
            continue
        if c.cover == TORUS:
            bad = p3 == (d // 2, d // 2)
            why = f"P3 = {p3}, excluded form (d/2,d/2)"
        elif c.cover == SPHERE:
            bad = len(p3) == 4 and (
                (p3[0] == p3[1] and p3[2] == p3[3]) or (p3[1] == p3[2] == p3[3] and p3[0] == 3 * p3[1])
            )
            why = f"P3 = {p3}, excluded forms (a,a,b,b), (3a,a,a,a)"
        else:
            return None
        verdict = Exceptional("prop.53") if bad else Realizable("prop.53")
        return Applies(verdict, "prop.53", why)
    return None


def criterion_23(c: CandidateCover) -> Optional[Applies]:
    """Data ``(2,...,2)`` and ``(3,3,2,...,2)`` or ``(3,2,...,2,1)`` over the
    sphere, sphere cover, ``d`` even: realizable iff ``max(P3) != d/2``."""
    d = c.degree
    if not _sphere_to_sphere(c) or c.n != 3 or d % 2:
        return None
    twos = _shape((2, d // 2))
    seconds = set()
    if d >= 6:
        seconds.add(_shape((3, 2), (2, (d - 6) // 2)))
    if d >= 4:
        seconds.add(_shape((3, 1), (2, (d - 4) // 2), (1, 1)))
    for p1, p2, p3 in _roles(c):
        if p1 == twos and p2 in seconds:
            ok = p3[0] != d // 2
            verdict = Realizable("prop.23") if ok else Exceptional("prop.23")
            return Applies(verdict, "prop.23", f"largest entry of P3 = {p3[0]}, d/2 = {d // 2}")
    return None


def _divisors(n: int) -> list[int]:
    return [k for k in range(2, n + 1) if n % k == 0]


def criterion_multiple_k(c: CandidateCover) -> Optional[Applies]:
    """If two branching points have all entries divisible by some ``k`` with
    ``1 < k < d``, every entry elsewhere must be at most ``d/k``."""
    if not _sphere_to_sphere(c) or c.n < 3:
        return None
    d = c.degree
    parts = [p.parts for p in c.partitions]
    for i, j in itertools.combinations(range(len(parts)), 2):
        g = math.gcd(*parts[i], *parts[j])
        others = [p for m, p in enumerate(parts) if m not in (i, j)]
        for k in _divisors(g):
            if k >= d:
                continue
            big = [p for p in others if p[0] * k > d]
            if big:
                return Applies(
                    Exceptional("thm.multiple-k"),
                    "thm.multiple-k",
                    f"k={k} divides {parts[i]} and {parts[j]}, but {big[0]} has an entry > d/k = {d}/{k}",
                )
    return None


def _even_pair(c: CandidateCover) -> Optional[tuple[int, int]]:
    for i, j in itertools.combinations(range(c.n), 2):
        if all(x % 2 == 0 for x in c.partitions[i].parts + c.partitions[j].parts):
            return i, j
    return None


def criterion_even_juxtaposition(c: CandidateCover) -> Optional[Applies]:
    """With two all-even branching points, every other one must split into two
    partitions of ``d/2``."""
    d = c.degree
    if not _sphere_to_sphere(c) or d % 2:
        return None
    for i, j in itertools.combinations(range(c.n), 2):
        if not all(x % 2 == 0 for x in c.partitions[i].parts + c.partitions[j].parts):
            continue
        for m, p in enumerate(c.partitions):
            if m not in (i, j) and not juxtaposition_splits(p, d // 2):
                return Applies(
                    Exceptional("thm.even-juxtaposition"),
                    "thm.even-juxtaposition",
                    f"{p} is not a juxtaposition of two partitions of {d // 2}",
                )
    return None


def criterion_odd_divisor(c: CandidateCover) -> Optional[Applies]:
    """Three branching points over the sphere whose entries share an odd
    divisor ``p >= 3``: realizable."""
    if c.base != SPHERE or c.n != 3:
        return None
    g = math.gcd(*(x for p in c.partitions for x in p.parts))
    while g % 2 == 0:
        g //= 2
    if g < 3:
        return None
    p = min(_divisors(g))
    return Applies(Realizable("thm.odd-divisor"), "thm.odd-divisor", f"{p} divides every entry")


def criterion_dminus2(c: CandidateCover) -> Optional[Applies]:
    """Three branching points over the sphere, one of them ``(d-2,2)``."""
    d = c.degree
    if c.base != SPHERE or c.n != 3 or d < 4:
        return None
    key = sorted((p.parts for p in c.partitions), reverse=True)
    if (d - 2, 2) not in key:
        return None
    if c.cover == SPHERE:
        families = []
        if d % 2 == 0 and d // 2 >= 2:
            k = d // 2
            families.append(((2 * k - 2, 2), _shape((2, k)), _shape((k + 1, 1), (1, k - 1))))
        if d % 2 == 0 and (d - 2) // 2 >= 2:
            k = (d - 2) // 2
            families.append(((2 * k, 2), _shape((2, k + 1)), _shape((2, k + 1))))
        bad = any(sorted(f, reverse=True) == key for f in families)
    elif c.cover == TORUS:
        bad = d == 6 and key == [(4, 2), (3, 3), (3, 3)]
    else:
        bad = False
    verdict = Exceptional("thm.dminus2") if bad else Realizable("thm.dminus2")
    return Applies(verdict, "thm.dminus2", f"cover {c.cover}, data {'|'.join(map(str, c.partitions))}")


def halve_candidate(c: CandidateCover) -> list[CandidateCover]:
    """Degree-``d/2`` candidates through which any realization must factor.

    Needs a sphere-to-sphere candidate with two branching points whose
    entries are all even. Those two are halved; every other partition is
    split into two partitions of ``d/2`` in every possible way. The result
    is sorted and free of duplicates; it may be empty.
    """
    if not _sphere_to_sphere(c):
        raise NotApplicable("halving needs a sphere-to-sphere candidate")
    d = c.degree
    if d % 2 or d < 4:
        raise NotApplicable(f"halving needs an even degree >= 4, got {d}")
    pair = _even_pair(c)
    if pair is None:
        raise NotApplicable("no two branching points with all entries even")
    i, j = pair
    halves = [Partition(tuple(x // 2 for x in c.partitions[m].parts)) for m in pair]
    split_options = []
    for m, p in enumerate(c.partitions):
        if m not in pair:
            split_options.append(juxtaposition_splits(p, d // 2))
    out = {}
    for choice in itertools.product(*split_options):
        parts = halves + [q for ab in choice for q in ab]
        report = check_candidate(SPHERE, SPHERE, d // 2, parts)
        if report.valid:
            out.setdefault(report.candidate.key(), report.candidate.canonical())
    return [out[k] for k in sorted(out, reverse=True)]


# ---------------------------------------------------------------------------
# Pipeline

CRITERIA: list[tuple[str, Callable[[CandidateCover], Optional[Applies]]]] = [
    ("chi-nonpositive", criterion_chi_nonpositive),
    ("orbifold", criterion_orbifold),
    ("dminus2", criterion_dminus2),
    ("53", criterion_53),
    ("23", criterion_23),
    ("multiple-k", criterion_multiple_k),
    ("even-juxtaposition", criterion_even_juxtaposition),
    ("odd-divisor", criterion_odd_divisor),
]


def criterion_halving(
    c: CandidateCover, budget: Optional[SearchBudget] = None, memo: Optional[dict] = None
) -> Optional[Applies]:
    """Decide ``c`` through :func:`halve_candidate`, recursively."""
    try:
        smaller = halve_candidate(c)
    except NotApplicable:
        return None
    if not smaller:
        return Applies(Exceptional("reduction.halving"), "reduction.halving", "no degree-d/2 factor candidate")
    unknown = False
    for h in smaller:
        v = _decide(h, budget, memo if memo is not None else {})
        if isinstance(v, Realizable):
            return Applies(Realizable("reduction.halving"), "reduction.halving", f"factors through {h}")
        unknown |= isinstance(v, Unknown)
    if unknown:
        return None
    return Applies(Exceptional("reduction.halving"), "reduction.halving", f"all {len(smaller)} factor candidates are exceptional")


def _decide(c: CandidateCover, budget, memo, order=None) -> Verdict:
    key = c.key()
    if order is None and key in memo:
        return memo[key]
    for _, fn in order or CRITERIA:
        res = fn(c)
        if res is not None:
            memo[key] = res.verdict
            return res.verdict
    res = criterion_halving(c, budget, memo)
    if res is not None:
        memo[key] = res.verdict
        return res.verdict
    if c.base == SPHERE:
        v = realizable_by_search(c, budget)
    else:
        v = Unknown(f"no criterion applies to base {c.base} and the search needs the sphere")
    memo[key] = v
    return v


@dataclass
class Audit:
    """Every criterion, the halving reduction and the search on one candidate."""

    candidate: CandidateCover
    results: dict[str, Applies] = field(default_factory=dict)
    search: Optional[Verdict] = None
    conflicts: list[str] = field(default_factory=list)

    @property
    def pipeline_verdict(self) -> Verdict:
        """What :func:`decide` returns in fast mode: results are stored in
        pipeline order, so the first one wins, then the search."""
        for res in self.results.values():
            return res.verdict
        return self.search or Unknown(f"no criterion applies to base {self.candidate.base}")

    @property
    def verdict(self) -> Verdict:
        """The search verdict when definite, else the first criterion's."""
        if self.search is not None and is_definite(self.search):
            return self.search
        for res in self.results.values():
            return res.verdict
        return self.search or Unknown("nothing applies")


def audit_candidate(c: CandidateCover, budget: Optional[SearchBudget] = None) -> Audit:
    """Run everything on ``c`` and record disagreements between definite
    verdicts (compared by kind, realizable vs exceptional)."""
    a = Audit(c)
    for name, fn in CRITERIA:
        res = fn(c)
        if res is not None:
            a.results[res.criterion_id] = res
    res = criterion_halving(c, budget, {})
    if res is not None:
        a.results[res.criterion_id] = res
    if c.base == SPHERE:
        a.search = realizable_by_search(c, budget)
    verdicts = [(cid, r.verdict.kind) for cid, r in a.results.items()]
    if a.search is not None and is_definite(a.search):
        verdicts.append(("search", a.search.kind))
    kinds = {k for _, k in verdicts}
    if len(kinds) > 1:
        a.conflicts.append(f"{c}: " + ", ".join(f"{cid}={k}" for cid, k in verdicts))
    return a


def decide(
    c: CandidateCover,
    budget: Optional[SearchBudget] = None,
    audit: bool = False,
    strict: bool = True,
    order: Optional[list] = None,
    witness: bool = False,
) -> Verdict:
    """Decide realizability of ``c``.

    Criteria run in pipeline order (see :data:`CRITERIA`), then the halving
    reduction, then the monodromy search; the first definite verdict wins.
    With ``audit=True`` everything is run and compared: a disagreement raises
    :class:`CriterionConflict` when ``strict``, otherwise it is logged and the
    search verdict takes precedence.

    With ``witness=True`` a realizable verdict reached by a criterion over
    the sphere is completed with a monodromy witness when the search finds
    one within ``budget``.
    """
    v = _decide_checked(c, budget, audit, strict, order)
    if witness and isinstance(v, Realizable) and v.witness is None and c.base == SPHERE:
        found = realizable_by_search(c, budget)
        if isinstance(found, Realizable):
            return Realizable(v.method, found.witness)
    return v


def _decide_checked(c, budget, audit, strict, order) -> Verdict:
    if not audit:
        return _decide(c, budget, {}, order)
    a = audit_candidate(c, budget)
    if a.conflicts:
        if strict:
            raise CriterionConflict("; ".join(a.conflicts))
        log.error("criterion conflict: %s", "; ".join(a.conflicts))
        return a.verdict
    if order is not None:
        return _decide(c, budget, {}, order)
    return a.pipeline_verdict

"""Building candidate covers: the necessary conditions, the Riemann-Hurwitz
forced cover surface, and enumeration of all candidates over a base."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .core import (
    _VALIDATED,
    CandidateCover,
    DegreeMismatch,
    HurwitzError,
    Partition,
    Surface,
    euler_characteristic,
    normalize_partition,
    parse_candidate_text,
)

CONDITIONS = ("RH", "parity", "orient-up", "orient-odd-deg", "juxtaposition")


class InvalidCandidate(HurwitzError, ValueError):
    """Raised when the data fail one of the necessary conditions."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        failed = ", ".join(c.condition for c in report.checks if not c.passed)
        super().__init__(f"invalid candidate ({failed})")


@dataclass(frozen=True)
class Check:
    condition: str
    passed: bool
    detail: str


@dataclass
class ValidationReport:
    checks: list[Check]
    notes: list[str] = field(default_factory=list)
    candidate: Optional[CandidateCover] = None

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks)

    def __str__(self):
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.condition}: {c.detail}" for c in self.checks]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


def partitions_of(d: int, max_part: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """All partitions of ``d`` in reverse-lexicographic order.

    >>> list(partitions_of(4))
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if max_part is None:
        max_part = d
    if d == 0:
        yield ()
        return
    for first in range(min(d, max_part), 0, -1):
        for rest in partitions_of(d - first, first):
            yield (first,) + rest


def juxtaposition_splits(p: Partition, half: int) -> list[tuple[Partition, Partition]]:
    """Every way of writing ``p`` as a juxtaposition of two partitions of
    ``half``, as unordered pairs (larger first).

    >>> juxtaposition_splits(normalize_partition([2, 2]), 2)
    [(Partition(2), Partition(2))]
    >>> juxtaposition_splits(normalize_partition([3, 1]), 2)
    []
    """
    if 2 * half != p.degree:
        return []
    counts = sorted(Counter(p.parts).items(), reverse=True)
    found = set()

    def rec(i, remaining, chosen):
        if remaining == 0:
            left = []
            right = []
            for (value, mult), k in itertools.zip_longest(counts, chosen, fillvalue=0):
                left += [value] * k
                right += [value] * (mult - k)
            a, b = Partition(tuple(left)), Partition(tuple(right))
            found.add((a, b) if a.parts >= b.parts else (b, a))
            return
        if i == len(counts):
            return
        value, mult = counts[i]
        for k in range(min(mult, remaining // value), -1, -1):
            rec(i + 1, remaining - k * value, chosen + [k])

    rec(0, half, [])
    return sorted(found, key=lambda ab: (ab[0].parts, ab[1].parts), reverse=True)


def is_juxtaposition(p: Partition, half: int) -> bool:
    return bool(juxtaposition_splits(p, half))


def _normalize_all(degree: int, partitions: Iterable) -> list[Partition]:
    parts = [normalize_partition(p) for p in partitions]
    bad = [str(p) for p in parts if p.degree != degree]
    if bad:
        raise DegreeMismatch(f"partitions {', '.join(bad)} do not sum to d={degree}")
    return parts


def check_candidate(
    cover: Surface, base: Surface, degree: int, partitions: Iterable
) -> ValidationReport:
    """Evaluate every necessary condition and report on each one.

    Trivial partitions ``(1,...,1)`` are dropped first; the report notes it.
    """
    if degree < 2:
        raise ValueError(f"degree must be at least 2, got {degree}")
    parts = _normalize_all(degree, partitions)
    notes = []
    kept = [p for p in parts if not p.is_trivial()]
    if len(kept) != len(parts):
        notes.append(f"dropped {len(parts) - len(kept)} trivial branching point(s)")
    d, n = degree, len(kept)
    ell = sum(len(p) for p in kept)
    chi_cover, chi_base = euler_characteristic(cover), euler_characteristic(base)

    checks = []
    lhs, rhs = chi_cover - ell, d * (chi_base - n)
    checks.append(Check("RH", lhs == rhs, f"chi(cover)-l = {chi_cover}-{ell} = {lhs}, d(chi(base)-n) = {d}*({chi_base}-{n}) = {rhs}"))
    checks.append(Check("parity", (n * d - ell) % 2 == 0, f"n*d-l = {n * d - ell}"))
    ok = cover.orientable or not base.orientable
    checks.append(Check("orient-up", ok, "base orientable => cover orientable"))
    ok = base.orientable or d % 2 == 0 or not cover.orientable
    checks.append(Check("orient-odd-deg", ok, "base non-orientable, d odd => cover non-orientable"))
    if not base.orientable and cover.orientable:
        bad = [str(p) for p in kept if d % 2 or not is_juxtaposition(p, d // 2)]
        detail = "every partition splits into two partitions of d/2"
        if bad:
            detail = f"not a juxtaposition of two partitions of d/2: {' '.join(bad)}"
        checks.append(Check("juxtaposition", not bad, detail))
    else:
        checks.append(Check("juxtaposition", True, "not applicable"))

    report = ValidationReport(checks, notes)
    if report.valid:
        report.candidate = CandidateCover(cover, base, degree, tuple(kept), _VALIDATED)
    return report


def validate_candidate(
    cover: Surface, base: Surface, degree: int, partitions: Iterable
) -> CandidateCover:
    """Return the candidate cover, or raise :class:`InvalidCandidate`
    carrying the failing report."""
    report = check_candidate(cover, base, degree, partitions)
    if not report.valid:
        raise InvalidCandidate(report)
    return report.candidate


def parse_candidate(text: str) -> CandidateCover:
    """Parse and validate ``o0 <-[4]- o0 : 2,2|2,2|3,1``."""
    return validate_candidate(*parse_candidate_text(text))


def forced_cover_surface(
    base: Surface, degree: int, partitions: Iterable, orientable: bool
) -> Optional[Surface]:
    """The cover surface that the Riemann-Hurwitz formula forces, in the
    requested orientability class, or None when no closed surface fits."""
    parts = _normalize_all(degree, partitions)
    ell = sum(len(p) for p in parts)
    chi = ell + degree * (euler_characteristic(base) - len(parts))
    return Surface.from_euler_char(chi, orientable)


def enumerate_candidates(
    base: Surface,
    degrees: Iterable[int],
    max_branching_points: int,
    include_unbranched: bool = False,
) -> Iterator[CandidateCover]:
    """Yield every valid candidate over ``base`` with degree in ``degrees``
    and at most ``max_branching_points`` non-trivial branching points.

    Order is deterministic: by degree, then number of branching points, then
    the reverse-lex sorted partition multiset, orientable cover first.
    """
    if max_branching_points < 1:
        raise ValueError("max_branching_points must be >= 1")
    covers = (True,) if base.orientable else (True, False)
    for d in sorted(set(degrees)):
        pool = [Partition(p) for p in partitions_of(d) if p[0] > 1]
        for n in range(0 if include_unbranched else 1, max_branching_points + 1):
            for combo in itertools.combinations_with_replacement(pool, n):
                for orientable in covers:
                    cover = forced_cover_surface(base, d, combo, orientable)
                    if cover is None:
                        continue
                    report = check_candidate(cover, base, d, combo)
                    if report.valid:
                        yield report.candidate


def count_candidates(base: Surface, degrees: Sequence[int], max_branching_points: int) -> int:
    return sum(1 for _ in enumerate_candidates(base, degrees, max_branching_points))

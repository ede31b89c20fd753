"""Permutations of ``{0, ..., d-1}`` and the monodromy search.

A permutation is a plain tuple of images in word form, ``p[i]`` being the
image of ``i``. Text and JSON forms are 1-based, as in ``(1 2)(3 4)``.

Composition is left to right: ``compose(p, q)`` applies ``p`` first and then
``q``, so a product ``s1 s2 ... sn`` means "s1, then s2, ...".

A candidate cover of the sphere with branch data ``P1, ..., Pn`` is
realizable iff there are permutations ``s1, ..., sn`` with cycle types
``P1, ..., Pn``, product the identity, generating a transitive group.
:func:`realizable_by_search` looks for such a tuple.
"""
from __future__ import annotations

import json
import math
import multiprocessing
import re
import time
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _ordered
from typing import Iterable, Iterator, Optional, Sequence

from .core import (
    CandidateCover,
    DegreeMismatch,
    Exceptional,
    HurwitzError,
    ParseError,
    Partition,
    Realizable,
    Unknown,
    Verdict,
)

Perm = tuple


class UnsupportedBase(HurwitzError, ValueError):
    """The monodromy search only handles candidates over the sphere."""


def identity(d: int) -> Perm:
    return tuple(range(d))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply ``p`` first, then ``q``.

    >>> compose((1, 0, 2), (0, 2, 1))  # (1 2) then (2 3)
    (2, 0, 1)
    """
    if len(p) != len(q):
        raise DegreeMismatch(f"cannot compose permutations of degree {len(p)} and {len(q)}")
    return tuple(map(q.__getitem__, p))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def product(perms: Iterable[Perm], d: Optional[int] = None) -> Perm:
    perms = list(perms)
    if not perms:
        if d is None:
            raise ValueError("degree needed for an empty product")
        return identity(d)
    out = perms[0]
    for q in perms[1:]:
        out = compose(out, q)
    return out


def conjugate(p: Perm, g: Perm) -> Perm:
    """``g^-1 p g``: relabel every point ``i`` of ``p`` as ``g[i]``."""
    return compose(compose(inverse(g), p), g)


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Cycles of ``p`` including fixed points, each starting at its minimum."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def _cycle_lengths(p: Perm) -> tuple[int, ...]:
    # hot path of the search
    seen = bytearray(len(p))
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = p[j]
            n += 1
        lengths.append(n)
    lengths.sort(reverse=True)
    return tuple(lengths)


def cycle_type(p: Perm) -> Partition:
    """
    >>> cycle_type((1, 0, 3, 2))
    Partition(2,2)
    """
    return Partition(_cycle_lengths(p))


def sign(p: Perm) -> int:
    return -1 if (len(p) - len(cycles(p))) % 2 else 1


def from_cycles(cyc: Iterable[Sequence[int]], d: int) -> Perm:
    """Build a permutation of degree ``d`` from 0-based cycles."""
    img = list(range(d))
    for c in cyc:
        for a, b in zip(c, c[1:] + type(c)(c[:1])):
            img[a] = b
    if not is_permutation(img):
        raise ValueError(f"cycles {cyc} do not define a permutation")
    return tuple(img)


def format_cycles(p: Perm) -> str:
    """1-based cycle notation, fixed points omitted.

    >>> format_cycles((1, 0, 3, 2))
    '(1 2)(3 4)'
    >>> format_cycles((0, 1))
    '()'
    """
    out = ["(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles(p) if len(c) > 1]
    return "".join(out) or "()"


def parse_cycles(text: str, d: int) -> Perm:
    text = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+(\s+\d+)*)?\s*\))+", text):
        raise ParseError(f"bad cycle notation {text!r}", text)
    cyc = []
    for body in re.findall(r"\(([^)]*)\)", text):
        pts = [int(x) - 1 for x in body.split()]
        if any(x < 0 or x >= d for x in pts):
            raise ParseError(f"point out of range 1..{d} in {text!r}", text)
        if pts:
            cyc.append(tuple(pts))
    flat = [x for c in cyc for x in c]
    if len(flat) != len(set(flat)):
        raise ParseError(f"cycles in {text!r} are not disjoint", text)
    return from_cycles(cyc, d)


def orbits(perms: Iterable[Perm], d: int) -> list[list[int]]:
    """Orbits of the group generated by ``perms`` (union-find)."""
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i, x in enumerate(p):
            a, b = find(i), find(x)
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for i in range(d):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def is_transitive(perms: Iterable[Perm], d: int) -> bool:
    return len(orbits(perms, d)) <= 1


# ---------------------------------------------------------------------------
# Conjugacy classes


def centralizer_order(t: Partition) -> int:
    """``prod_k k^{m_k} m_k!`` where ``m_k`` is the number of parts equal to k."""
    out = 1
    for k, m in Counter(t.parts).items():
        out *= k**m * math.factorial(m)
    return out


def class_size(t: Partition) -> int:
    """Number of permutations of cycle type ``t``."""
    return math.factorial(t.degree) // centralizer_order(t)


def canonical_representative(t: Partition) -> Perm:
    """Cycles of decreasing length filled with consecutive points:
    ``(3,2)`` gives ``(1 2 3)(4 5)``."""
    cyc = []
    start = 0
    for k in t.parts:
        cyc.append(tuple(range(start, start + k)))
        start += k
    return from_cycles(cyc, t.degree)


def conjugacy_class_stream(t: Partition) -> Iterator[Perm]:
    """Every permutation of cycle type ``t``, each exactly once.

    The smallest unused point always opens the next cycle; its length and
    the ordered remaining entries of that cycle are then free choices.
    """
    d = t.degree
    counts = Counter(t.parts)
    lengths = sorted(counts, reverse=True)
    img = list(range(d))

    def rec(remaining):
        if not remaining:
            yield tuple(img)
            return
        a, rest = remaining[0], remaining[1:]
        for k in lengths:
            if not counts[k]:
                continue
            counts[k] -= 1
            for others in _ordered(rest, k - 1):
                cyc = (a,) + others
                for x, y in zip(cyc, cyc[1:] + (a,)):
                    img[x] = y
                used = set(others)
                yield from rec([x for x in rest if x not in used])
            for x in rest:
                img[x] = x
            img[a] = a
            counts[k] += 1

    yield from rec(list(range(d)))


@lru_cache(maxsize=64)
def _class_list(parts: tuple[int, ...]) -> tuple[Perm, ...]:
    return tuple(conjugacy_class_stream(Partition(parts)))


_CACHE_LIMIT = 250_000


def _class_iter(t: Partition) -> Iterable[Perm]:
    if class_size(t) <= _CACHE_LIMIT:
        return _class_list(t.parts)
    return conjugacy_class_stream(t)


# ---------------------------------------------------------------------------
# Witnesses


@dataclass(frozen=True)
class MonodromyWitness:
    degree: int
    perms: tuple[Perm, ...]

    def to_text(self) -> str:
        return " | ".join(format_cycles(p) for p in self.perms)

    @classmethod
    def from_text(cls, text: str, d: int) -> "MonodromyWitness":
        return cls(d, tuple(parse_cycles(chunk, d) for chunk in text.split("|")))

    def to_json(self) -> dict:
        return {"degree": self.degree, "perms": [[x + 1 for x in p] for p in self.perms]}

    @classmethod
    def from_json(cls, obj) -> "MonodromyWitness":
        if isinstance(obj, str):
            obj = json.loads(obj)
        perms = tuple(tuple(x - 1 for x in p) for p in obj["perms"])
        if not all(len(p) == obj["degree"] and is_permutation(p) for p in perms):
            raise ValueError("witness JSON does not list permutations of the stated degree")
        return cls(obj["degree"], perms)

    def __str__(self):
        return self.to_text()


def verify_witness(c: CandidateCover, w: MonodromyWitness) -> bool:
    """Check cycle types (as a multiset against the branch data), that the
    product in the recorded order is the identity, and transitivity."""
    d = c.degree
    if w.degree != d or any(len(p) != d or not is_permutation(p) for p in w.perms):
        return False
    types = sorted((_cycle_lengths(p) for p in w.perms if p != identity(d)), reverse=True)
    if types != sorted((p.parts for p in c.partitions), reverse=True):
        return False
    if product(w.perms, d) != identity(d):
        return False
    return is_transitive(w.perms, d)


def hurwitz_move(perms: Sequence[Perm], i: int) -> list[Perm]:
    """Swap positions ``i`` and ``i+1``: ``(a, b) -> (b, b^-1 a b)``.

    Keeps the product, the generated group and the multiset of cycle types.
    """
    out = list(perms)
    a, b = out[i], out[i + 1]
    out[i], out[i + 1] = b, conjugate(a, b)
    return out


def reorder_witness(perms: Sequence[Perm], targets: Sequence[Partition]) -> list[Perm]:
    """Use Hurwitz moves to bring ``perms`` into the cycle-type order of
    ``targets`` (which must match as a multiset)."""
    out = list(perms)
    want = [t.parts for t in targets]
    for pos, parts in enumerate(want):
        j = next(k for k in range(pos, len(out)) if _cycle_lengths(out[k]) == parts)
        # moving out[j] leftwards: (a, b) -> (b, b^-1 a b) pushes b forward unchanged
        for k in range(j - 1, pos - 1, -1):
            out = hurwitz_move(out, k)
    return out


# ---------------------------------------------------------------------------
# Search


@dataclass(frozen=True)
class SearchBudget:
    """Caps on search nodes (generator choices tried) and wall-clock time.
    ``None`` means uncapped."""

    max_nodes: Optional[int] = 50_000_000
    max_seconds: Optional[float] = None

    def __post_init__(self):
        if self.max_nodes is not None and self.max_nodes <= 0:
            raise ValueError("max_nodes must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise ValueError("max_seconds must be positive")


class _BudgetExhausted(Exception):
    pass


@dataclass
class SearchStats:
    nodes: int = 0
    exhausted: bool = False


@dataclass(frozen=True)
class _Plan:
    d: int
    fixed: Partition
    free: tuple[Partition, ...]
    last: Partition
    order: tuple[int, ...]  # original index of fixed, *free, last


def _plan(c: CandidateCover) -> _Plan:
    parts = list(c.partitions)
    idx = sorted(range(len(parts)), key=lambda i: (class_size(parts[i]), parts[i].parts, i))
    fixed = idx[-1]
    last = idx[-2]
    free = idx[:-2]
    return _Plan(
        c.degree,
        parts[fixed],
        tuple(parts[i] for i in free),
        parts[last],
        (fixed, *free, last),
    )


def _run_plan(plan: _Plan, budget: SearchBudget, shard: tuple[int, int] = (0, 1)):
    """Depth-first search over the free generators. Returns (tuple, stats)
    with tuple None when the shard holds no solution."""
    d = plan.d
    s1 = canonical_representative(plan.fixed)
    target = plan.last.parts
    nfree = len(plan.free)
    stats = SearchStats()
    max_nodes = budget.max_nodes
    deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
    offset, stride = shard

    def tick():
        stats.nodes += 1
        if max_nodes is not None and stats.nodes > max_nodes:
            raise _BudgetExhausted
        if deadline is not None and stats.nodes & 1023 == 0 and time.monotonic() > deadline:
            raise _BudgetExhausted

    def rec(level, partial, chosen):
        if level == nfree:
            # the last generator lies in the group of the others, so
            # transitivity is decided by s1 and the chosen ones
            if _cycle_lengths(partial) == target and is_transitive([s1, *chosen], d):
                return list(chosen)
            return None
        source = _class_iter(plan.free[level])
        for k, s in enumerate(source):
            if level == 0 and k % stride != offset:
                continue
            tick()
            nxt = tuple(map(s.__getitem__, partial))
            chosen.append(s)
            found = rec(level + 1, nxt, chosen)
            chosen.pop()
            if found is not None:
                return found
        return None

    try:
        found = rec(0, s1, [])
    except _BudgetExhausted:
        stats.exhausted = True
        return None, stats
    if found is None:
        return None, stats
    partial = product([s1, *found])
    return [s1, *found, inverse(partial)], stats


def _shard_worker(args):
    plan, budget, shard = args
    return _run_plan(plan, budget, shard)


def realizable_by_search(
    c: CandidateCover,
    budget: Optional[SearchBudget] = None,
    workers: int = 1,
    stats: Optional[SearchStats] = None,
) -> Verdict:
    """Decide a sphere-base candidate by monodromy search.

    The generator of the largest conjugacy class is frozen to its canonical
    representative (simultaneous conjugation preserves every condition), the
    smaller classes are searched depth-first, and the remaining generator is
    forced to be the inverse of the partial product. With ``workers > 1`` the
    first free class is split into shards searched by separate processes.
    """
    if not c.base.is_sphere():
        raise UnsupportedBase(f"monodromy search needs a sphere base, got {c.base}")
    budget = budget or SearchBudget()
    d = c.degree
    if c.n < 2:
        # a valid sphere candidate always has n >= 2
        raise ValueError(f"unexpected candidate with {c.n} branching points")
    plan = _plan(c)
    if workers <= 1 or not plan.free:
        found, st = _run_plan(plan, budget)
        exhausted = st.exhausted
        nodes = st.nodes
    else:
        per_shard = budget
        if budget.max_nodes is not None:
            per_shard = SearchBudget(max(1, budget.max_nodes // workers), budget.max_seconds)
        jobs = [(plan, per_shard, (i, workers)) for i in range(workers)]
        found, exhausted, nodes = None, False, 0
        with multiprocessing.Pool(workers) as pool:
            for res, st in pool.imap_unordered(_shard_worker, jobs):
                nodes += st.nodes
                exhausted |= st.exhausted
                if res is not None:
                    found = res
                    pool.terminate()
                    break
    if stats is not None:
        stats.nodes, stats.exhausted = nodes, exhausted
    if found is not None:
        # found is in plan order; Hurwitz moves restore the candidate's order
        perms = reorder_witness(found, c.partitions)
        w = MonodromyWitness(d, tuple(perms))
        return Realizable("search", w)
    if exhausted:
        return Unknown(f"search budget exhausted after {nodes} nodes")
    return Exceptional("search")

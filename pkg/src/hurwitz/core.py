"""Value types shared across the package: surfaces, partitions, candidate
covers and verdicts.

Everything here is immutable. Surfaces are written ``o<g>`` (orientable of
genus g) and ``n<k>`` (non-orientable with k cross-caps); partitions are
comma-separated, partition lists pipe-separated::

    o0 <-[4]- o0 : 2,2|2,2|3,1
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union


class HurwitzError(Exception):
    """Base class for errors raised by this package."""


class EmptyPartition(HurwitzError, ValueError):
    pass


class NonPositiveEntry(HurwitzError, ValueError):
    pass


class DegreeMismatch(HurwitzError, ValueError):
    pass


class ParseError(HurwitzError, ValueError):
    """Malformed text input; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, text: str = "", column: int = 1, line: int = 1):
        self.line = line
        self.column = column
        self.text = text
        super().__init__(f"line {line}, column {column}: {message}")


# ---------------------------------------------------------------------------
# Surfaces


@dataclass(frozen=True, order=True)
class Surface:
    orientable: bool
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if not self.orientable and self.genus < 1:
            raise ValueError("a non-orientable surface has at least one cross-cap")

    @property
    def euler_char(self) -> int:
        return euler_characteristic(self)

    def is_sphere(self) -> bool:
        return self.orientable and self.genus == 0

    def __str__(self):
        return f"{'o' if self.orientable else 'n'}{self.genus}"

    @classmethod
    def parse(cls, text: str) -> "Surface":
        m = re.fullmatch(r"\s*([on])(\d+)\s*", text)
        if not m:
            raise ParseError(f"bad surface {text!r}, expected o<g> or n<k>", text)
        try:
            return cls(m.group(1) == "o", int(m.group(2)))
        except ValueError as exc:
            raise ParseError(str(exc), text) from None

    @classmethod
    def from_euler_char(cls, chi: int, orientable: bool) -> Optional["Surface"]:
        """The closed surface of the given class with Euler characteristic
        ``chi``, or None if there is none."""
        if orientable:
            if chi > 2 or chi % 2:
                return None
            return cls(True, (2 - chi) // 2)
        if chi > 1:
            return None
        return cls(False, 2 - chi)


SPHERE = Surface(True, 0)
TORUS = Surface(True, 1)
PROJECTIVE_PLANE = Surface(False, 1)


def euler_characteristic(s: Surface) -> int:
    """
    >>> euler_characteristic(SPHERE), euler_characteristic(TORUS)
    (2, 0)
    >>> euler_characteristic(PROJECTIVE_PLANE)
    1
    """
    if s.orientable:
        return 2 - 2 * s.genus
    return 2 - s.genus


# ---------------------------------------------------------------------------
# Partitions


@dataclass(frozen=True)
class Partition:
    """A partition of ``degree``; ``parts`` are non-increasing.

    Build these with :func:`normalize_partition` rather than directly.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = self.parts
        if not parts:
            raise EmptyPartition("a partition needs at least one part")
        if any(p < 1 for p in parts):
            raise NonPositiveEntry(f"partition entries must be >= 1, got {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts {parts} are not non-increasing")

    @property
    def degree(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def is_trivial(self) -> bool:
        return self.parts[0] == 1

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __lt__(self, other: "Partition"):
        return self.parts < other.parts

    def __str__(self):
        return ",".join(map(str, self.parts))

    def __repr__(self):
        return f"Partition({self})"


def normalize_partition(parts: Iterable[int]) -> Partition:
    """Sort ``parts`` into a :class:`Partition`.

    >>> normalize_partition([1, 3, 2])
    Partition(3,2,1)
    """
    if isinstance(parts, Partition):
        return parts
    parts = [int(p) for p in parts]
    if not parts:
        raise EmptyPartition("a partition needs at least one part")
    if min(parts) < 1:
        raise NonPositiveEntry(f"partition entries must be >= 1, got {parts}")
    return Partition(tuple(sorted(parts, reverse=True)))


def trivial_partition(d: int) -> Partition:
    return Partition((1,) * d)


def parse_partition_list(text: str) -> list[Partition]:
    """Parse ``2,2|2,2|3,1``. An empty (or blank) string is the empty list."""
    if not text.strip():
        return []
    out = []
    offset = 0
    for chunk in text.split("|"):
        try:
            entries = [int(x) for x in chunk.split(",")]
        except ValueError:
            raise ParseError(f"bad partition {chunk.strip()!r}", text, offset + 1) from None
        try:
            out.append(normalize_partition(entries))
        except HurwitzError as exc:
            raise ParseError(str(exc), text, offset + 1) from None
        offset += len(chunk) + 1
    return out


def format_partition_list(partitions: Sequence[Partition]) -> str:
    return "|".join(str(p) for p in partitions)


# ---------------------------------------------------------------------------
# Candidate covers

_VALIDATED = object()


@dataclass(frozen=True, eq=False)
class CandidateCover:
    """A candidate branched cover ``cover --d:1--> base`` with the given
    branch data.

    Instances come from :func:`hurwitz.validation.validate_candidate`; the
    constructor refuses to be called directly. Equality and hashing ignore
    the order of the branching points.
    """

    cover: Surface
    base: Surface
    degree: int
    partitions: tuple[Partition, ...]
    _token: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._token is not _VALIDATED:
            raise TypeError("CandidateCover values are built by validate_candidate()")

    @property
    def n(self) -> int:
        return len(self.partitions)

    @property
    def total_length(self) -> int:
        return sum(len(p) for p in self.partitions)

    def key(self) -> tuple:
        """Canonical identity: partitions as a reverse-lex sorted multiset."""
        return (
            self.cover,
            self.base,
            self.degree,
            tuple(sorted((p.parts for p in self.partitions), reverse=True)),
        )

    def canonical(self) -> "CandidateCover":
        parts = tuple(Partition(p) for p in self.key()[3])
        return CandidateCover(self.cover, self.base, self.degree, parts, _VALIDATED)

    def __eq__(self, other):
        if not isinstance(other, CandidateCover):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        return format_candidate(self.cover, self.base, self.degree, self.partitions)

    def __repr__(self):
        return f"CandidateCover({self})"


def format_candidate(cover, base, degree, partitions) -> str:
    return f"{cover} <-[{degree}]- {base} : {format_partition_list(partitions)}".rstrip()


_CANDIDATE_RE = re.compile(
    r"^\s*(?P<cover>\S+)\s*<-\[(?P<deg>[^\]]*)\]-\s*(?P<base>\S+)\s*:(?P<parts>.*)$"
)


def parse_candidate_text(text: str) -> tuple[Surface, Surface, int, list[Partition]]:
    """Split candidate text into its raw pieces without validating it.

    >>> parse_candidate_text("o0 <-[4]- o0 : 2,2|2,2|3,1")[2]
    4
    """
    if "\n" in text.strip():
        lines = text.strip().splitlines()
        raise ParseError("candidate text must be a single line", text, 1, len(lines))
    m = _CANDIDATE_RE.match(text)
    if not m:
        col = 1
        if "<-[" not in text:
            # point at whatever follows the cover surface
            tok = re.match(r"\s*\S+\s*", text)
            col = tok.end() + 1 if tok else 1
        elif ":" not in text:
            col = len(text) + 1
        raise ParseError("expected '<cover> <-[d]- <base> : <partitions>'", text, col)
    try:
        cover = Surface.parse(m.group("cover"))
    except ParseError as exc:
        raise ParseError(str(exc).split(": ", 1)[1], text, m.start("cover") + 1) from None
    try:
        base = Surface.parse(m.group("base"))
    except ParseError as exc:
        raise ParseError(str(exc).split(": ", 1)[1], text, m.start("base") + 1) from None
    try:
        degree = int(m.group("deg"))
    except ValueError:
        raise ParseError(f"bad degree {m.group('deg')!r}", text, m.start("deg") + 1) from None
    try:
        partitions = parse_partition_list(m.group("parts"))
    except ParseError as exc:
        raise ParseError(
            str(exc).split(": ", 1)[1], text, m.start("parts") + exc.column
        ) from None
    return cover, base, degree, partitions


# ---------------------------------------------------------------------------
# Verdicts

METHODS = (
    "search",
    "thm.chi-nonpositive",
    "thm.orbifold-positive",
    "thm.244",
    "thm.236",
    "thm.dminus2",
    "prop.53",
    "prop.23",
    "thm.multiple-k",
    "thm.even-juxtaposition",
    "thm.odd-divisor",
    "reduction.halving",
)


def _check_method(method: str):
    if method not in METHODS:
        raise ValueError(f"unknown method id {method!r}")


@dataclass(frozen=True)
class Realizable:
    method: str
    witness: Optional["MonodromyWitness"] = None  # noqa: F821 (permgroup)

    kind = "realizable"

    def __post_init__(self):
        _check_method(self.method)


@dataclass(frozen=True)
class Exceptional:
    method: str

    kind = "exceptional"

    def __post_init__(self):
        _check_method(self.method)


@dataclass(frozen=True)
class Unknown:
    reason: str

    kind = "unknown"
    method = None


Verdict = Union[Realizable, Exceptional, Unknown]


def is_definite(v: Verdict) -> bool:
    return not isinstance(v, Unknown)


@dataclass(frozen=True)
class Applies:
    """A criterion that reached a definite verdict. Criteria return None
    when they do not apply."""

    verdict: Verdict
    criterion_id: str
    detail: str = ""

    def __post_init__(self):
        if not is_definite(self.verdict):
            raise ValueError("a criterion cannot conclude Unknown")
        _check_method(self.criterion_id)


CriterionResult = Optional[Applies]

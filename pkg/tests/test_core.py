import pytest
from hypothesis import given
from hypothesis import strategies as st

from hurwitz.core import (
    PROJECTIVE_PLANE,
    SPHERE,
    TORUS,
    CandidateCover,
    EmptyPartition,
    Exceptional,
    NonPositiveEntry,
    ParseError,
    Realizable,
    Surface,
    Unknown,
    euler_characteristic,
    normalize_partition,
    parse_candidate_text,
    parse_partition_list,
)


@pytest.mark.parametrize(
    "surface, chi",
    [(SPHERE, 2), (TORUS, 0), (PROJECTIVE_PLANE, 1), (Surface(True, 3), -4), (Surface(False, 2), 0)],
)
def test_euler_characteristic(surface, chi):
    assert euler_characteristic(surface) == chi


def test_euler_characteristic_is_injective_per_class():
    for orientable in (True, False):
        lo = 0 if orientable else 1
        chis = [euler_characteristic(Surface(orientable, g)) for g in range(lo, 30)]
        assert len(set(chis)) == len(chis)
        assert all(Surface.from_euler_char(x, orientable) == Surface(orientable, g) for g, x in enumerate(chis, lo))


def test_non_orientable_needs_a_crosscap():
    with pytest.raises(ValueError):
        Surface(False, 0)


def test_from_euler_char_rejects_impossible():
    assert Surface.from_euler_char(3, True) is None
    assert Surface.from_euler_char(-1, True) is None
    assert Surface.from_euler_char(2, False) is None
    assert Surface.from_euler_char(-1, False) == Surface(False, 3)


@pytest.mark.parametrize(
    "parts, normal, degree",
    [((1, 3, 2), (3, 2, 1), 6), ((2, 2), (2, 2), 4), ((4,), (4,), 4)],
)
def test_normalize_partition(parts, normal, degree):
    p = normalize_partition(parts)
    assert p.parts == normal
    assert p.degree == degree
    assert normalize_partition(p) == p
    assert normalize_partition(p.parts) == p


def test_normalize_partition_errors():
    with pytest.raises(EmptyPartition):
        normalize_partition([])
    with pytest.raises(NonPositiveEntry):
        normalize_partition([2, 0])


@given(st.lists(st.integers(1, 9), min_size=1, max_size=8), st.randoms())
def test_normalize_partition_ignores_order(parts, rnd):
    shuffled = list(parts)
    rnd.shuffle(shuffled)
    p = normalize_partition(parts)
    assert p == normalize_partition(shuffled)
    assert 1 <= p.length <= p.degree
    assert list(p.parts) == sorted(parts, reverse=True)


def test_surface_text_round_trip():
    for s in [SPHERE, TORUS, PROJECTIVE_PLANE, Surface(True, 7), Surface(False, 4)]:
        assert Surface.parse(str(s)) == s
    with pytest.raises(ParseError):
        Surface.parse("x3")
    with pytest.raises(ParseError):
        Surface.parse("n0")


def test_partition_list_text():
    assert [p.parts for p in parse_partition_list("2,2|2,2|3,1")] == [(2, 2), (2, 2), (3, 1)]
    assert parse_partition_list("") == []
    with pytest.raises(ParseError) as err:
        parse_partition_list("2,2|a,1")
    assert err.value.column == 5


def test_candidate_text_pieces():
    cover, base, d, parts = parse_candidate_text("o1 <-[6]- o0 : 4,2|3,3|3,3")
    assert (cover, base, d) == (TORUS, SPHERE, 6)
    assert [p.parts for p in parts] == [(4, 2), (3, 3), (3, 3)]


@pytest.mark.parametrize(
    "text, column",
    [
        ("o0 <-[x]- o0 : 2|2", 7),
        ("q0 <-[2]- o0 : 2|2", 1),
        ("o0 <-[2]- o0 : 2|2,y", 18),
        ("o0 -> o0 : 2|2", 4),
    ],
)
def test_candidate_parse_errors_carry_a_column(text, column):
    with pytest.raises(ParseError) as err:
        parse_candidate_text(text)
    assert err.value.column == column
    assert err.value.line == 1


def test_candidates_only_come_from_validation():
    with pytest.raises(TypeError):
        CandidateCover(SPHERE, SPHERE, 2, ())


def test_candidate_identity_ignores_branch_point_order(cand):
    a = cand("o0 <-[4]- o0 : 2,2|2,2|3,1")
    b = cand("o0 <-[4]- o0 : 3,1|2,2|2,2")
    assert a == b and hash(a) == hash(b)
    assert str(a) != str(b)
    assert str(a.canonical()) == "o0 <-[4]- o0 : 3,1|2,2|2,2"
    assert a.total_length == 6


def test_verdict_method_registry():
    assert Realizable("search").kind == "realizable"
    assert Exceptional("thm.244").method == "thm.244"
    assert Unknown("budget").method is None
    with pytest.raises(ValueError):
        Realizable("made-up")

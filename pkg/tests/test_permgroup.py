import itertools
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz.core import SPHERE, TORUS, DegreeMismatch, Exceptional, Realizable, Unknown
from hurwitz.core import normalize_partition as P
from hurwitz.permgroup import (
    MonodromyWitness,
    SearchBudget,
    SearchStats,
    UnsupportedBase,
    canonical_representative,
    centralizer_order,
    class_size,
    compose,
    conjugacy_class_stream,
    conjugate,
    cycle_type,
    cycles,
    format_cycles,
    from_cycles,
    hurwitz_move,
    identity,
    inverse,
    is_transitive,
    orbits,
    parse_cycles,
    product,
    realizable_by_search,
    reorder_witness,
    sign,
    verify_witness,
)
from hurwitz.validation import enumerate_candidates, partitions_of

import oracles

perms = st.integers(1, 8).flatmap(lambda d: st.permutations(range(d)).map(tuple))


def same_degree(k):
    return st.integers(1, 8).flatmap(lambda d: st.tuples(*[st.permutations(range(d)).map(tuple)] * k))


def test_compose_applies_left_first():
    a = from_cycles([(0, 1)], 3)
    b = from_cycles([(1, 2)], 3)
    # 0 -a-> 1 -b-> 2
    assert compose(a, b)[0] == 2
    assert compose(a, b) == oracles.after(b, a)
    with pytest.raises(DegreeMismatch):
        compose((0, 1), (0, 1, 2))


@given(same_degree(3))
def test_group_laws(triple):
    a, b, c = triple
    e = identity(len(a))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert compose(a, inverse(a)) == e == compose(inverse(a), a)
    assert compose(a, e) == a
    assert product([a, b, c]) == compose(compose(a, b), c)
    assert sign(compose(a, b)) == sign(a) * sign(b)


@given(same_degree(2))
def test_conjugation_keeps_cycle_type(pair):
    p, g = pair
    q = conjugate(p, g)
    assert cycle_type(q) == cycle_type(p)
    assert q == compose(compose(inverse(g), p), g)


@given(perms)
def test_cycles_partition_the_points(p):
    cyc = cycles(p)
    assert sorted(x for c in cyc for x in c) == list(range(len(p)))
    assert cycle_type(p).parts == oracles.lengths(p)
    assert from_cycles(cyc, len(p)) == p
    assert parse_cycles(format_cycles(p), len(p)) == p


def test_cycle_notation_is_one_based():
    assert format_cycles((1, 0, 2)) == "(1 2)"
    assert format_cycles(identity(4)) == "()"
    assert parse_cycles("(1 2 3)(4 5)", 5) == (1, 2, 0, 4, 3)
    with pytest.raises(ValueError):
        parse_cycles("(1 1)", 3)
    with pytest.raises(ValueError):
        parse_cycles("(1 4)", 3)


def test_orbits_and_transitivity():
    a = from_cycles([(0, 1)], 4)
    b = from_cycles([(2, 3)], 4)
    assert sorted(map(sorted, orbits([a, b], 4))) == [[0, 1], [2, 3]]
    assert not is_transitive([a, b], 4)
    assert is_transitive([a, b, from_cycles([(1, 2)], 4)], 4)


@given(same_degree(2))
def test_transitivity_matches_oracle(pair):
    assert is_transitive(pair, len(pair[0])) == oracles.connected(pair, len(pair[0]))


@pytest.mark.parametrize("d", range(1, 8))
def test_class_sizes_sum_to_factorial(d):
    assert sum(class_size(P(t)) for t in partitions_of(d)) == math.factorial(d)


@pytest.mark.parametrize("d", range(1, 7))
def test_class_stream_is_exactly_the_class(d):
    for t in partitions_of(d):
        t = P(t)
        got = list(conjugacy_class_stream(t))
        assert len(got) == len(set(got)) == class_size(t)
        assert set(got) == set(oracles.full_class(t.parts))
        assert cycle_type(canonical_representative(t)) == t
        assert math.factorial(d) // centralizer_order(t) == class_size(t)


def test_witness_text_and_json_round_trip():
    w = MonodromyWitness(4, (from_cycles([(0, 1), (2, 3)], 4), from_cycles([(0, 2), (1, 3)], 4)))
    assert w.to_text() == "(1 2)(3 4) | (1 3)(2 4)"
    assert MonodromyWitness.from_text(w.to_text(), 4) == w
    doc = json.loads(json.dumps(w.to_json()))
    assert doc["perms"][0] == [2, 1, 4, 3]
    assert MonodromyWitness.from_json(doc) == w
    with pytest.raises(ValueError):
        MonodromyWitness.from_json({"degree": 3, "perms": [[1, 1, 2]]})


def test_verify_witness_rejects_each_broken_condition(cand):
    c = cand("o0 <-[3]- o0 : 2,1|2,1|3")
    a, b = from_cycles([(0, 1)], 3), from_cycles([(1, 2)], 3)
    good = MonodromyWitness(3, (a, b, inverse(compose(a, b))))
    assert verify_witness(c, good)
    # wrong product
    assert not verify_witness(c, MonodromyWitness(3, (a, b, compose(a, b))))
    # wrong cycle types
    assert not verify_witness(c, MonodromyWitness(3, (a, a, identity(3))))
    # intransitive: the product is fine but 2 is never moved
    c2 = cand("o0 <-[2]- o0 : 2|2")
    assert not verify_witness(c2, MonodromyWitness(3, (a, a)))
    assert not verify_witness(c2, MonodromyWitness(2, ((1, 0), (1, 0), (1, 0))))


@settings(max_examples=50, deadline=None)
@given(same_degree(4), st.integers(0, 2))
def test_hurwitz_move_invariants(quad, i):
    d = len(quad[0])
    moved = hurwitz_move(quad, i)
    assert product(moved) == product(quad)
    assert sorted(map(oracles.lengths, moved)) == sorted(map(oracles.lengths, quad))
    assert is_transitive(moved, d) == is_transitive(quad, d)


def test_reorder_witness_follows_targets(cand):
    c = cand("o0 <-[4]- o0 : 3,1|2,2|3,1")
    v = realizable_by_search(c)
    assert isinstance(v, Realizable)
    types = [cycle_type(p) for p in v.witness.perms]
    assert types == list(c.partitions)
    flipped = reorder_witness(v.witness.perms, [P([2, 2]), P([3, 1]), P([3, 1])])
    assert [cycle_type(p) for p in flipped] == [P([2, 2]), P([3, 1]), P([3, 1])]
    assert is_transitive(flipped, 4)
    assert product(flipped) == identity(4)


def test_search_on_known_cases(cand):
    assert isinstance(realizable_by_search(cand("o0 <-[4]- o0 : 2,2|2,2|3,1")), Exceptional)
    assert isinstance(realizable_by_search(cand("o1 <-[6]- o0 : 4,2|3,3|3,3")), Exceptional)
    assert isinstance(realizable_by_search(cand("o0 <-[6]- o0 : 2,2,2|2,2,2|4,2")), Exceptional)
    v = realizable_by_search(cand("o0 <-[4]- o0 : 2,2|2,2|2,1,1|2,1,1"))
    assert isinstance(v, Realizable) and verify_witness(cand("o0 <-[4]- o0 : 2,2|2,2|2,1,1|2,1,1"), v.witness)


def test_search_rejects_other_bases(cand):
    with pytest.raises(UnsupportedBase):
        realizable_by_search(cand("o1 <-[2]- o1 : "))


def test_search_budget(cand):
    c = cand("o4 <-[12]- o0 : 12|12|4,4,3,1")
    stats = SearchStats()
    v = realizable_by_search(c, SearchBudget(max_nodes=10), stats=stats)
    assert isinstance(v, Unknown)
    assert stats.exhausted
    with pytest.raises(ValueError):
        SearchBudget(max_nodes=0)
    with pytest.raises(ValueError):
        SearchBudget(max_seconds=-1)


def test_sharded_search_agrees(cand):
    for text in ["o0 <-[6]- o0 : 2,2,2|2,2,2|4,2", "o0 <-[6]- o0 : 2,2,2|3,3|3,2,1", "o0 <-[5]- o0 : 2,2,1|4,1|4,1"]:
        c = cand(text)
        one = realizable_by_search(c)
        two = realizable_by_search(c, workers=2)
        assert one.kind == two.kind
        if isinstance(two, Realizable):
            assert verify_witness(c, two.witness)


@pytest.mark.parametrize(
    "degrees, max_n",
    [(range(2, 7), 4), ([7], 3)],
    ids=["d<=6,n<=4", "d=7,n<=3"],
)
def test_search_matches_brute_force(degrees, max_n):
    cands = list(enumerate_candidates(SPHERE, degrees, max_n))
    assert cands
    for c in cands:
        v = realizable_by_search(c)
        expect = oracles.brute_force_realizable(c.degree, [p.parts for p in c.partitions])
        assert isinstance(v, Realizable) == expect, str(c)
        assert not isinstance(v, Unknown)
        if expect:
            assert verify_witness(c, v.witness)
            # independent re-check with the oracle's composition convention
            prod = identity(c.degree)
            for p in v.witness.perms:
                prod = oracles.after(p, prod)
            assert prod == identity(c.degree)
            assert oracles.connected(v.witness.perms, c.degree)


def test_search_over_torus_covers(cand):
    # higher-genus covers of the sphere go through the same search
    c = cand("o1 <-[3]- o0 : 3|3|3")
    v = realizable_by_search(c)
    assert isinstance(v, Realizable) and verify_witness(c, v.witness)
    assert c.cover == TORUS


def test_small_cases_by_hand():
    e4 = identity(4)
    assert cycle_type(e4) == P([1, 1, 1, 1])
    a = parse_cycles("(1 2)(3 4)", 4)
    b = parse_cycles("(1 3)(2 4)", 4)
    assert cycle_type(a) == P([2, 2])
    assert cycle_type(compose(a, b)) == P([2, 2])
    t = compose(parse_cycles("(1 2)", 4), parse_cycles("(2 3)", 4))
    # 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
    assert format_cycles(t) == "(1 3 2)"
    assert cycle_type(t) == P([3, 1])
    assert is_transitive([a, b], 4)
    assert not is_transitive([parse_cycles("(1 2)", 4)], 4)
    assert is_transitive([], 1)
    assert len(list(conjugacy_class_stream(P([2, 2])))) == 3
    assert len(list(conjugacy_class_stream(P([3, 1])))) == 8
    assert list(conjugacy_class_stream(P([1, 1, 1]))) == [identity(3)]


def test_klein_four_witness(cand):
    w = MonodromyWitness.from_text("(1 2)(3 4) | (1 3)(2 4) | (1 4)(2 3)", 4)
    assert verify_witness(cand("o0 <-[4]- o0 : 2,2|2,2|2,2"), w)
    assert not verify_witness(cand("o0 <-[4]- o0 : 2,2|2,2|3,1"), w)
    assert verify_witness(cand("o0 <-[2]- o0 : 2|2"), MonodromyWitness.from_text("(1 2) | (1 2)", 2))
    v = realizable_by_search(cand("o0 <-[2]- o0 : 2|2"))
    assert v.witness.to_text() == "(1 2) | (1 2)"


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_verdict_ignores_order_and_relabelling(data):
    from hurwitz.validation import validate_candidate

    cands = list(enumerate_candidates(SPHERE, range(3, 7), 4))
    c = data.draw(st.sampled_from(cands))
    order = data.draw(st.permutations(list(c.partitions)))
    c2 = validate_candidate(c.cover, c.base, c.degree, order)
    v1, v2 = realizable_by_search(c), realizable_by_search(c2)
    assert v1.kind == v2.kind
    if isinstance(v2, Realizable):
        assert verify_witness(c2, v2.witness)
        g = data.draw(st.permutations(range(c.degree)).map(tuple))
        moved = MonodromyWitness(c.degree, tuple(conjugate(p, g) for p in v2.witness.perms))
        assert verify_witness(c2, moved)


@given(perms)
def test_inverse_cancels(p):
    assert all(x == 1 for x in cycle_type(compose(p, inverse(p))).parts)

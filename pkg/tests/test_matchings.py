import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _brute import naive_feasible_matchings
from sqflows.matchings import (
    MatchingError,
    NestedMatching,
    collection,
    enumerate_feasible_matchings,
    enumerate_nested_matchings,
    exchange,
    is_balanced,
    is_feasible,
    matching_multiset,
    parse_collection_pair,
    write_collection_pair,
)


def arcs(m):
    return set(m.arcs)


def test_paper_item_1():
    assert [arcs(m) for m in enumerate_feasible_matchings({1, 3}, 2, 1)] == [{(1, 2)}, {(2, 3)}]
    assert [arcs(m) for m in enumerate_feasible_matchings({1, 2}, 2, 1)] == [{(2, 3)}]
    assert [arcs(m) for m in enumerate_feasible_matchings({2, 3}, 2, 1)] == [{(1, 2)}]


def test_paper_item_2():
    assert {frozenset(arcs(m)) for m in enumerate_feasible_matchings({1, 3}, 2, 2)} == {
        frozenset({(1, 4), (2, 3)}),
        frozenset({(1, 2), (3, 4)}),
    }
    assert [arcs(m) for m in enumerate_feasible_matchings({1, 2}, 2, 2)] == [{(1, 4), (2, 3)}]
    assert [arcs(m) for m in enumerate_feasible_matchings({1, 4}, 2, 2)] == [{(1, 2), (3, 4)}]


def test_paper_item_3():
    five = {
        frozenset({(1, 2), (4, 5)}),
        frozenset({(1, 4), (2, 3)}),
        frozenset({(2, 3), (4, 5)}),
        frozenset({(1, 2), (3, 4)}),
        frozenset({(2, 5), (3, 4)}),
    }
    assert {frozenset(arcs(m)) for m in enumerate_feasible_matchings({1, 3, 5}, 3, 2)} == five
    assert {frozenset(arcs(m)) for m in enumerate_feasible_matchings({2, 3, 4}, 3, 2)} == {
        frozenset({(1, 2), (4, 5)})
    }
    assert {frozenset(arcs(m)) for m in enumerate_feasible_matchings({1, 2, 5}, 3, 2)} == {
        frozenset({(1, 4), (2, 3)}),
        frozenset({(2, 3), (4, 5)}),
    }
    assert {frozenset(arcs(m)) for m in enumerate_feasible_matchings({1, 4, 5}, 3, 2)} == {
        frozenset({(1, 2), (3, 4)}),
        frozenset({(2, 5), (3, 4)}),
    }


def test_is_feasible_examples():
    assert is_feasible(NestedMatching(((1, 2),), 3), {1, 3})
    assert is_feasible(NestedMatching(((2, 3),), 3), {1, 3})
    assert not is_feasible(NestedMatching(((1, 2),), 3), {1, 2})
    assert is_feasible(NestedMatching(((1, 2), (4, 5)), 5), {1, 3, 5})


def test_is_feasible_rejects_each_clause():
    # wrong arc count
    assert not is_feasible(NestedMatching((), 3), {1, 3})
    # crossing arcs
    assert not is_feasible(NestedMatching(((1, 3), (2, 4)), 4), {1, 2})
    # covered free element
    assert not is_feasible(NestedMatching(((1, 3),), 3), {1, 2})
    # shared endpoint
    assert not is_feasible(NestedMatching(((1, 2), (2, 3)), 4), {1, 3})


def test_enumeration_matches_brute_force():
    rng = random.Random("brute")
    cases = []
    for p in range(1, 5):
        for q in range(1, p + 1):
            if p + q <= 8:
                cases.append((p, q))
    for p, q in cases:
        n = p + q
        for a in combinations(range(1, n + 1), p):
            ours = sorted(enumerate_feasible_matchings(a, p, q), key=lambda m: m.arcs)
            brute = naive_feasible_matchings(a, p, q)
            assert ours == brute


def test_enumeration_matches_brute_force_ten():
    # one larger spot check at p + q = 10
    rng = random.Random("ten")
    for _ in range(3):
        a = tuple(sorted(rng.sample(range(1, 11), 6)))
        ours = sorted(enumerate_feasible_matchings(a, 6, 4), key=lambda m: m.arcs)
        assert ours == naive_feasible_matchings(a, 6, 4)


def test_block_structure():
    # inside any maximal arc every element is an endpoint
    for p, q in ((2, 2), (3, 2), (3, 3), (4, 2)):
        n = p + q
        for a in combinations(range(1, n + 1), p):
            for m in enumerate_feasible_matchings(a, p, q):
                ends = m.endpoints()
                for i, j in m.arcs:
                    for k in range(i, j + 1):
                        assert k in ends


def test_exchange_examples():
    m = NestedMatching(((1, 2),), 3)
    assert exchange({1, 3}, m, ((1, 2),)) == {2, 3}
    assert exchange({1, 3}, m, ()) == {1, 3}
    assert exchange(exchange({1, 3}, m, ((1, 2),)), m, ((1, 2),)) == {1, 3}


def test_exchange_errors():
    m = NestedMatching(((1, 2),), 3)
    with pytest.raises(MatchingError):
        exchange({1, 3}, m, ((2, 3),))
    with pytest.raises(MatchingError):
        exchange({1, 2}, m, ((1, 2),))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_exchange_involution_property(data):
    p = data.draw(st.integers(1, 4))
    q = data.draw(st.integers(1, p))
    n = p + q
    a = frozenset(data.draw(st.permutations(range(1, n + 1)))[:p])
    options = enumerate_feasible_matchings(a, p, q)
    m = data.draw(st.sampled_from(options))
    chosen = tuple(arc for arc in m.arcs if data.draw(st.booleans()))
    swapped = exchange(a, m, chosen)
    assert is_feasible(m, swapped)
    assert exchange(swapped, m, chosen) == a


def test_matching_multiset_examples():
    c = collection(2, 1, [(1, 3)])
    counts = matching_multiset(c)
    assert counts[NestedMatching(((1, 2),), 3)] == 1
    assert counts[NestedMatching(((2, 3),), 3)] == 1

    c = collection(2, 1, [(1, 2), (2, 3)])
    counts = matching_multiset(c)
    assert counts[NestedMatching(((1, 2),), 3)] == 1
    assert counts[NestedMatching(((2, 3),), 3)] == 1

    c = collection(3, 2, [(2, 3, 4), (1, 2, 5), (1, 4, 5)])
    counts = matching_multiset(c)
    assert len(counts) == 5
    assert all(v == 1 for v in counts.values())


def test_balanced_examples():
    assert is_balanced(collection(2, 1, [(1, 3)]), collection(2, 1, [(1, 2), (2, 3)])).balanced
    assert is_balanced(collection(2, 2, [(1, 3)]), collection(2, 2, [(1, 2), (1, 4)])).balanced
    assert is_balanced(
        collection(3, 2, [(1, 3, 5)]), collection(3, 2, [(2, 3, 4), (1, 2, 5), (1, 4, 5)])
    ).balanced
    result = is_balanced(collection(2, 1, [(1, 2)]), collection(2, 1, [(1, 3)]))
    assert not result.balanced
    assert result.witness == NestedMatching(((1, 2),), 3)
    assert (result.lhs_count, result.rhs_count) == (0, 1)


def test_balanced_is_symmetric_reflexive_additive():
    rng = random.Random("bal")
    for _ in range(30):
        p = rng.randint(1, 3)
        q = rng.randint(1, p)
        n = p + q
        pool = list(combinations(range(1, n + 1), p))
        c1 = collection(p, q, [rng.choice(pool) for _ in range(rng.randint(1, 3))])
        c2 = collection(p, q, [rng.choice(pool) for _ in range(rng.randint(1, 3))])
        r12 = is_balanced(c1, c2)
        r21 = is_balanced(c2, c1)
        assert r12.balanced == r21.balanced
        assert is_balanced(c1, c1).balanced
        extra = rng.choice(pool)
        c1x = collection(p, q, list(c1.members) + [extra])
        c2x = collection(p, q, list(c2.members) + [extra])
        assert is_balanced(c1x, c2x).balanced == r12.balanced


def test_balanced_parameter_mismatch():
    with pytest.raises(MatchingError):
        is_balanced(collection(2, 1, [(1, 2)]), collection(2, 2, [(1, 2)]))


def test_nested_matching_enumeration_no_colors():
    # nested matchings of size q on [n]: filtered count must match a direct scan
    found = enumerate_nested_matchings(4, 2)
    assert {frozenset(m.arcs) for m in found} == {
        frozenset({(1, 2), (3, 4)}),
        frozenset({(1, 4), (2, 3)}),
    }
    total = enumerate_nested_matchings(5, 2)
    assert all(m.is_nested() and m.free_uncovered() and m.pairwise_disjoint() for m in total)


def test_collection_validation():
    with pytest.raises(MatchingError):
        collection(2, 1, [(1, 2, 3)])
    with pytest.raises(MatchingError):
        collection(2, 1, [(1, 7)])
    c = collection(2, 1, [(3, 1), (1, 2)])
    assert c.members == ((1, 2), (1, 3))


def test_pair_file_roundtrip():
    lhs = collection(3, 2, [(1, 3, 5)])
    rhs = collection(3, 2, [(2, 3, 4), (1, 2, 5), (1, 4, 5)])
    text = write_collection_pair(lhs, rhs)
    back_l, back_r = parse_collection_pair(text)
    assert (back_l, back_r) == (lhs, rhs)


def test_pair_file_errors():
    with pytest.raises(MatchingError):
        parse_collection_pair("")
    with pytest.raises(MatchingError):
        parse_collection_pair("2 1\n1 2\n")
    with pytest.raises(MatchingError):
        parse_collection_pair("2 1\n1 2\n--\n1 3\n--\n2 3\n")
    with pytest.raises(MatchingError):
        parse_collection_pair("x y\n1 2\n--\n1 3\n")

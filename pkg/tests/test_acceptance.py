"""Acceptance suite: one test per criterion, exact (tolerance-zero) checks.

Each test prints a pass line with its runtime; run with ``pytest -s`` to see
them as they complete.
"""

import random
import time
from fractions import Fraction
from itertools import combinations

from sqflows.counterexample import (
    augment_matching,
    build_gadget_network,
    evaluate_inequality,
)
from sqflows.doubleflow import count_decompositions, decompose, superpose
from sqflows.flows import (
    FlowFunction,
    enumerate_flag_flows,
    enumerate_flows,
    evaluate_fgf,
    lindstrom_matrix,
    minor,
)
from sqflows.laurent import (
    intervals_of,
    laurent_expand,
    reconstruct_from_intervals,
    weights_from_intervals,
)
from sqflows.matchings import (
    NestedMatching,
    collection,
    enumerate_feasible_matchings,
    enumerate_nested_matchings,
    is_balanced,
)
from sqflows.network import build_half_grid, random_grid_network, vertex_split
from sqflows.relations import (
    Instantiation,
    QuadraticRelation,
    base_matching,
    dominance_leq,
    evaluate_sides,
    family_groebner,
    family_interval_exchange,
    family_quadruple,
    family_quintuple,
    family_tail_fixed,
    family_triple,
    random_weighting,
    sides_equal,
    symbolic_check,
    verify_stable,
)
from sqflows.semiring import (
    COUNTING_NAT,
    EXACT_INT,
    POLY_NAT,
    POSITIVE_RATIONAL,
    TROPICAL_INT,
    TROPICAL_RATIONAL,
)


def report(number, started, text):
    elapsed = time.monotonic() - started
    print(f"criterion {number}: PASS ({elapsed:.2f}s) {text}")


def arcsets(ms):
    return {frozenset(m.arcs) for m in ms}


def test_criterion_1_paper_matchings():
    started = time.monotonic()
    assert arcsets(enumerate_feasible_matchings({1, 3}, 2, 1)) == {
        frozenset({(1, 2)}),
        frozenset({(2, 3)}),
    }
    assert arcsets(enumerate_feasible_matchings({1, 2}, 2, 1)) == {frozenset({(2, 3)})}
    assert arcsets(enumerate_feasible_matchings({2, 3}, 2, 1)) == {frozenset({(1, 2)})}
    assert arcsets(enumerate_feasible_matchings({1, 3}, 2, 2)) == {
        frozenset({(1, 4), (2, 3)}),
        frozenset({(1, 2), (3, 4)}),
    }
    assert arcsets(enumerate_feasible_matchings({1, 3, 5}, 3, 2)) == {
        frozenset({(1, 2), (4, 5)}),
        frozenset({(1, 4), (2, 3)}),
        frozenset({(2, 3), (4, 5)}),
        frozenset({(1, 2), (3, 4)}),
        frozenset({(2, 5), (3, 4)}),
    }
    assert time.monotonic() - started < 1.0
    report(1, started, "worked-example matching sets reproduced exactly")


def test_criterion_2_balancedness():
    started = time.monotonic()
    assert is_balanced(collection(2, 1, [(1, 3)]), collection(2, 1, [(1, 2), (2, 3)])).balanced
    assert is_balanced(collection(2, 2, [(1, 3)]), collection(2, 2, [(1, 2), (1, 4)])).balanced
    assert is_balanced(
        collection(3, 2, [(1, 3, 5)]), collection(3, 2, [(2, 3, 4), (1, 2, 5), (1, 4, 5)])
    ).balanced
    result = is_balanced(collection(2, 1, [(1, 2)]), collection(2, 1, [(1, 3)]))
    assert not result.balanced
    assert result.witness == NestedMatching(((1, 2),), 3)
    assert time.monotonic() - started < 1.0
    report(2, started, "triple/quadruple/quintuple balanced; {12} vs {13} witnessed")


def test_criterion_3_family_soundness():
    started = time.monotonic()
    checked = 0
    for p in range(1, 7):
        for q in range(1, p + 1):
            if p + q > 7:
                continue
            m0 = base_matching(p, q)
            for r in range(1, q + 1):
                for chosen in combinations(m0, r):
                    assert verify_stable(family_interval_exchange(p, q, chosen))
                    checked += 1
            tail = list(range(p + 2, p + q + 1))
            for r in range(len(tail) + 1):
                for q_tail in combinations(tail, r):
                    assert verify_stable(family_tail_fixed(p, q, q_tail))
                    checked += 1
            n = p + q
            for b in combinations(range(1, n + 1), p):
                bbar = tuple(x for x in range(1, n + 1) if x not in b)
                if dominance_leq(b, bbar) or dominance_leq(bbar, b):
                    continue
                for d in (k for k in range(1, q + 1) if b[k - 1] > bbar[k - 1]):
                    assert verify_stable(family_groebner(p, q, b, d))
                    checked += 1
    assert time.monotonic() - started < 60.0
    report(3, started, f"{checked} generated family relations all balanced (p+q <= 7)")


def test_criterion_4_stability_sweep():
    started = time.monotonic()
    relations = [family_triple(), family_quadruple(), family_quintuple()]
    carriers = [COUNTING_NAT, EXACT_INT, TROPICAL_INT, POSITIVE_RATIONAL, POLY_NAT]
    dags = [random_grid_network(6, 2, random.Random(1000 + s)) for s in range(10)]
    instances = 0
    for rel in relations:
        size = rel.p + rel.q
        networks = [vertex_split(build_half_grid(n)) for n in range(size, 7)] + dags
        for net in networks:
            n = len(net.sources)
            verts = net.original_vertices() or net.vertices
            for carrier in carriers:
                rng = random.Random(f"sweep:{rel.p}:{rel.q}:{n}:{id(net) % 97}:{carrier.name}")
                for trial in range(25):
                    y = tuple(sorted(rng.sample(range(1, n + 1), size)))
                    rest = [i for i in range(1, n + 1) if i not in y]
                    x = frozenset(i for i in rest if rng.random() < 0.5)
                    w = random_weighting(verts, carrier, rng)
                    f = FlowFunction(net, w, carrier)
                    inst = Instantiation(n=n, x_set=x, y_list=y)
                    assert sides_equal(evaluate_sides(f, rel, inst)), (rel, carrier.name, y, x)
                    instances += 1
    assert time.monotonic() - started < 120.0
    report(4, started, f"{instances} exact SP3/SP4/SP5 instances over 5 carriers")


def test_criterion_5_necessity():
    started = time.monotonic()
    rng = random.Random("necessity")
    produced = 0
    while produced < 50:
        p = rng.randint(1, 5)
        q = rng.randint(1, min(p, 6 - p))
        if p < q or p + q > 6:
            continue
        n = p + q
        pool = list(combinations(range(1, n + 1), p))
        lhs = collection(p, q, [rng.choice(pool) for _ in range(rng.randint(1, 3))])
        rhs = collection(p, q, [rng.choice(pool) for _ in range(rng.randint(1, 3))])
        if is_balanced(lhs, rhs).balanced:
            continue
        rep = evaluate_inequality(lhs, rhs)
        assert rep.p1_p2_verified
        assert rep.lhs_sum != rep.rhs_sum
        produced += 1
    assert time.monotonic() - started < 120.0
    report(5, started, "50 random unbalanced pairs separated by verified gadgets")


def test_criterion_6_double_flow_laws():
    started = time.monotonic()
    net = vertex_split(build_half_grid(4))
    checked = 0
    spot_checks = 0
    for p, q in ((1, 1), (2, 1), (2, 2), (3, 1)):
        size = p + q
        for y in combinations(range(1, 5), size):
            rest = [i for i in range(1, 5) if i not in y]
            for r in range(len(rest) + 1):
                for x in combinations(rest, r):
                    pair_groups = {}

                    def groups_for(a_set):
                        comp = set(range(1, size + 1)) - set(a_set)
                        I = tuple(sorted(set(x) | {y[k - 1] for k in a_set}))
                        J = tuple(sorted(set(x) | {y[k - 1] for k in comp}))
                        key = (I, J)
                        if key not in pair_groups:
                            table = {}
                            for f1 in enumerate_flag_flows(net, I):
                                for f2 in enumerate_flag_flows(net, J):
                                    df = superpose(f1, f2)
                                    table.setdefault(df.multiplicities, []).append((f1, f2))
                            pair_groups[key] = table
                        return pair_groups[key]

                    for a in combinations(range(1, size + 1), p):
                        table = groups_for(frozenset(a))
                        for xi_key, pairs in table.items():
                            df = superpose(*pairs[0])
                            dec = decompose(df)
                            assert len(pairs) == 2 ** dec.d
                            checked += 1
                            if checked % 10 == 0:
                                assert count_decompositions(df) == len(pairs)
                                spot_checks += 1
                            for k in range(len(dec.matching.arcs) + 1):
                                for chosen in combinations(dec.matching.arcs, k):
                                    a_new = frozenset(a) ^ {e for arc in chosen for e in arc}
                                    other = groups_for(a_new)
                                    assert len(other.get(df.multiplicities, ())) == len(pairs)
    assert checked > 150 and spot_checks > 10
    assert time.monotonic() - started < 60.0
    report(6, started, f"{checked} double flows: N = 2^d and exchange invariance")


def test_criterion_7_lindstrom():
    started = time.monotonic()
    rng = random.Random("lindstrom")
    for n in (1, 2, 3, 4):
        g = build_half_grid(n)
        for _ in range(10):
            w = {v: rng.randint(-3, 3) for v in g.vertices}
            mat = lindstrom_matrix(g, w, EXACT_INT)
            for size in range(0, n + 1):
                for I in combinations(range(1, n + 1), size):
                    for J in combinations(range(1, n + 1), size):
                        direct = 0
                        for flow in enumerate_flows(g, I, J):
                            term = 1
                            for path in flow.paths:
                                for v in path:
                                    term *= w[v]
                            direct += term
                        assert minor(mat, I, J, EXACT_INT) == direct
    assert time.monotonic() - started < 30.0
    report(7, started, "path-matrix minors equal (I,J)-flow sums, n <= 4")


def test_criterion_8_laurent():
    started = time.monotonic()
    rng = random.Random("laurent")
    for n in range(1, 7):
        g = build_half_grid(n)
        w = random_weighting(g.vertices, POSITIVE_RATIONAL, rng)
        vals = intervals_of(w, n, POSITIVE_RATIONAL)
        back = weights_from_intervals(vals, n, POSITIVE_RATIONAL)
        assert {k: Fraction(v) for k, v in w.items()} == back
    for n in range(1, 6):
        g = build_half_grid(n)
        weightings = {
            POSITIVE_RATIONAL: random_weighting(g.vertices, POSITIVE_RATIONAL, rng),
            TROPICAL_RATIONAL: random_weighting(g.vertices, TROPICAL_RATIONAL, rng),
        }
        for size in range(1, n + 1):
            for a in combinations(range(1, n + 1), size):
                expr = laurent_expand(n, a)
                assert expr.degrees() <= {-1, 0, 1, 2}
                for carrier, w in weightings.items():
                    vals = intervals_of(w, n, carrier)
                    direct = evaluate_fgf(g, w, a, carrier)
                    assert expr.evaluate(vals, carrier) == direct
                    a_set = set(a)
                    lo, hi = min(a_set), max(a_set)
                    gaps = [j for j in range(lo + 1, hi) if j not in a_set]
                    if gaps:
                        for j in gaps:
                            got = reconstruct_from_intervals(vals, a, n, carrier, j_choice=j)
                            assert got == direct
                    else:
                        assert reconstruct_from_intervals(vals, a, n, carrier) == direct
    assert time.monotonic() - started < 120.0
    report(8, started, "interval roundtrip, degree bounds, reconstruction (all gaps)")


def _closed_loop_pairs(rng):
    cases = []
    for p, q in ((1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1)):
        n = p + q
        pool = list(combinations(range(1, n + 1), p))
        here = []
        for rel in (family_triple(), family_quadruple(), family_quintuple()):
            if (rel.p, rel.q) == (p, q):
                here.append((rel.lhs, rel.rhs))
        here.append((collection(p, q, [pool[0]]), collection(p, q, [pool[-1]])))
        for _ in range(12):
            lhs = collection(p, q, [rng.choice(pool) for _ in range(rng.randint(1, 3))])
            rhs = collection(p, q, [rng.choice(pool) for _ in range(rng.randint(1, 3))])
            here.append((lhs, rhs))
        for lhs, rhs in list(here):
            if is_balanced(lhs, rhs).balanced:
                bumped = collection(p, q, list(rhs.members) + [rhs.members[0]])
                here.append((lhs, bumped))
        cases.extend(((p, q), lhs, rhs) for lhs, rhs in here)
    return cases


def test_criterion_9_closed_loop():
    started = time.monotonic()
    rng = random.Random("closedloop")
    gadget_cache = {}
    matchings_cache = {}
    balanced_seen = unbalanced_seen = 0
    for (p, q), lhs, rhs in _closed_loop_pairs(rng):
        n = p + q
        if (n, q) not in matchings_cache:
            matchings_cache[(n, q)] = enumerate_nested_matchings(n, q)
        rel = QuadraticRelation(p, q, lhs, rhs)
        balanced = verify_stable(rel)
        symbolic = True
        for m in matchings_cache[(n, q)]:
            key = (p, q, m.arcs)
            if key not in gadget_cache:
                aug = augment_matching(m, p, q)
                gadget_cache[key] = build_gadget_network(aug.result).network
            if not symbolic_check(rel, gadget_cache[key]):
                symbolic = False
                break
        assert balanced == symbolic, (p, q, lhs.members, rhs.members)
        balanced_seen += balanced
        unbalanced_seen += not balanced
    assert balanced_seen >= 10 and unbalanced_seen >= 30
    assert time.monotonic() - started < 300.0
    report(
        9,
        started,
        f"balancedness == gadget-symbolic equality on {balanced_seen} balanced "
        f"and {unbalanced_seen} unbalanced pairs",
    )

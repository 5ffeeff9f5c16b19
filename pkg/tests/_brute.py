"""Independent brute-force oracles for the tests.

These deliberately avoid the production algorithms: path systems come from a
plain all-simple-paths DFS over every sink pairing, matchings from endpoint
subsets times all pairings, determinants from cofactor expansion.
"""

from itertools import combinations, permutations

from sqflows.matchings import NestedMatching, is_feasible


def all_simple_paths(net, start, goal):
    paths = []

    def walk(v, seen, acc):
        if v == goal:
            paths.append(tuple(acc))
            return
        for u in net.out(v):
            if u not in seen:
                walk(u, seen | {u}, acc + [u])

    walk(start, {start}, [start])
    return paths


def naive_disjoint_systems(net, srcs, dsts):
    """All pairwise vertex-disjoint systems srcs[k] -> dsts[k]."""
    choices = [all_simple_paths(net, s, t) for s, t in zip(srcs, dsts)]
    systems = []

    def build(k, acc, used):
        if k == len(choices):
            systems.append(tuple(acc))
            return
        for path in choices[k]:
            if used & set(path):
                continue
            build(k + 1, acc + [path], used | set(path))

    build(0, [], set())
    return systems


def naive_flag_flows(net, I):
    """Disjoint systems from S_I to the first |I| sinks over EVERY pairing;
    planarity should leave only the order-preserving one."""
    I = sorted(I)
    srcs = [net.sources[i - 1] for i in I]
    dsts = list(net.sinks[: len(I)])
    out = []
    for perm in permutations(range(len(I))):
        shuffled = [dsts[perm[k]] for k in range(len(I))]
        for system in naive_disjoint_systems(net, srcs, shuffled):
            out.append((perm, system))
    return out


def naive_feasible_matchings(a_set, p, q):
    """Filter every set of q disjoint arcs on [p+q] through is_feasible."""
    n = p + q
    found = []
    for ends in combinations(range(1, n + 1), 2 * q):
        for pairing in _pairings(list(ends)):
            m = NestedMatching(tuple(pairing), n)
            if is_feasible(m, a_set) and m not in found:
                found.append(m)
    return sorted(found, key=lambda m: m.arcs)


def _pairings(items):
    if not items:
        yield []
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1 :]
        for tail in _pairings(rest):
            yield [(first, items[k])] + tail


def det_cofactor(matrix):
    """Integer determinant by first-row cofactor expansion."""
    k = len(matrix)
    if k == 0:
        return 1
    if k == 1:
        return matrix[0][0]
    total = 0
    for c in range(k):
        sub = [row[:c] + row[c + 1 :] for row in [list(r) for r in matrix[1:]]]
        term = matrix[0][c] * det_cofactor(sub)
        total += term if c % 2 == 0 else -term
    return total

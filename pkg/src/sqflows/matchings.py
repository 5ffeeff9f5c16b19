"""Nested matchings on [p+q], feasibility, the exchange operation, and the
balancedness decision for collection pairs.

An arc (i, j) with i < j covers the interval [i..j].  A matching M of q arcs
is feasible for a p-subset A of [p+q] when the arcs are pairwise disjoint and
each one has exactly one end in A, the arcs are nested, and no element outside
the arcs is covered by one.  Two collections are balanced when every matching
is feasible for equally many members (with multiplicity) of each.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

Arc = tuple[int, int]


class MatchingError(ValueError):
    pass


@dataclass(frozen=True)
class NestedMatching:
    """A set of arcs on [ambient], held in canonical sorted order."""

    arcs: tuple[Arc, ...]
    ambient: int

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted(tuple(a) for a in self.arcs)))
        for i, j in self.arcs:
            if not (1 <= i < j <= self.ambient):
                raise MatchingError(f"bad arc ({i}, {j}) on [{self.ambient}]")

    def endpoints(self) -> frozenset[int]:
        return frozenset(x for arc in self.arcs for x in arc)

    def free_elements(self) -> tuple[int, ...]:
        ends = self.endpoints()
        return tuple(k for k in range(1, self.ambient + 1) if k not in ends)

    def pairwise_disjoint(self) -> bool:
        ends = [x for arc in self.arcs for x in arc]
        return len(ends) == len(set(ends))

    def is_nested(self) -> bool:
        for (i1, j1), (i2, j2) in combinations(self.arcs, 2):
            lo, hi = (i1, j1), (i2, j2)
            disjoint = hi[0] > lo[1] or lo[0] > hi[1]
            contains = (lo[0] <= hi[0] and hi[1] <= lo[1]) or (hi[0] <= lo[0] and lo[1] <= hi[1])
            if not (disjoint or contains):
                return False
        return True

    def free_uncovered(self) -> bool:
        ends = self.endpoints()
        for i, j in self.arcs:
            for k in range(i + 1, j):
                if k not in ends:
                    return False
        return True

    def __str__(self):
        return " ".join(f"({i},{j})" for i, j in self.arcs) or "(empty)"


def is_feasible(matching: NestedMatching, a_set: Iterable[int]) -> bool:
    """All three feasibility conditions for A, with q inferred from the ambient."""
    A = frozenset(a_set)
    n = matching.ambient
    p = len(A)
    q = n - p
    if not A <= set(range(1, n + 1)):
        raise MatchingError(f"A must be a subset of [{n}]")
    if len(matching.arcs) != q or not matching.pairwise_disjoint():
        return False
    for i, j in matching.arcs:
        if (i in A) == (j in A):
            return False
    return matching.is_nested() and matching.free_uncovered()


def _scan(n: int, q: int, a_set: frozenset[int] | None):
    """Left-to-right scan: arcs open and close stack-wise (nested by
    construction), free elements are allowed only outside open arcs, and the
    bicoloring condition is checked at closure when a_set is given."""

    results: list[NestedMatching] = []
    stack: list[int] = []
    arcs: list[Arc] = []

    def step(k: int):
        if k > n:
            if not stack and len(arcs) == q:
                results.append(NestedMatching(tuple(arcs), n))
            return
        remaining = n - k + 1
        if len(stack) > remaining:
            return
        if stack:
            i = stack[-1]
            ok = a_set is None or ((i in a_set) != (k in a_set))
            if ok:
                stack.pop()
                arcs.append((i, k))
                step(k + 1)
                arcs.pop()
                stack.append(i)
        if len(arcs) + len(stack) < q:
            stack.append(k)
            step(k + 1)
            stack.pop()
        if not stack:
            step(k + 1)

    step(1)
    return tuple(results)


def enumerate_feasible_matchings(a_set: Iterable[int], p: int, q: int) -> tuple[NestedMatching, ...]:
    """All feasible matchings for the p-subset A of [p+q], each exactly once,
    in a fixed order."""
    A = frozenset(a_set)
    n = p + q
    if len(A) != p or not A <= set(range(1, n + 1)):
        raise MatchingError(f"A must be a {p}-subset of [{n}]")
    return _scan(n, q, A)


def enumerate_nested_matchings(n: int, q: int) -> tuple[NestedMatching, ...]:
    """All q-arc matchings on [n] satisfying the nesting and covering
    conditions, regardless of any coloring."""
    return _scan(n, q, None)


def exchange(a_set: Iterable[int], matching: NestedMatching, chosen: Iterable[Arc]) -> frozenset[int]:
    """Swap the A- and complement-ends inside each chosen arc: A xor (union of
    the chosen arcs).  The matching stays feasible for the result."""
    A = frozenset(a_set)
    chosen = {tuple(arc) for arc in chosen}
    if not chosen <= set(matching.arcs):
        raise MatchingError("chosen arcs are not all in the matching")
    if not is_feasible(matching, A):
        raise MatchingError("matching is not feasible for A")
    swapped = {x for arc in chosen for x in arc}
    return A ^ swapped


@dataclass(frozen=True)
class Collection:
    """Multicollection of p-subsets of [p+q]; members kept sorted, repeats
    meaning multiplicity."""

    p: int
    q: int
    members: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        canon = tuple(sorted(tuple(sorted(m)) for m in self.members))
        object.__setattr__(self, "members", canon)
        n = self.p + self.q
        for m in self.members:
            if len(m) != self.p or len(set(m)) != self.p:
                raise MatchingError(f"member {m} is not a {self.p}-subset")
            if not set(m) <= set(range(1, n + 1)):
                raise MatchingError(f"member {m} is not inside [{n}]")


def collection(p: int, q: int, members: Iterable[Iterable[int]]) -> Collection:
    return Collection(p, q, tuple(tuple(m) for m in members))


def matching_multiset(coll: Collection) -> Counter:
    """Matchings counted with multiplicity |{A in the collection : M feasible
    for A}|, members counted with their own multiplicity."""
    counts: Counter = Counter()
    for member in coll.members:
        for m in enumerate_feasible_matchings(member, coll.p, coll.q):
            counts[m] += 1
    return counts


@dataclass(frozen=True)
class BalanceResult:
    balanced: bool
    witness: NestedMatching | None
    lhs_count: int
    rhs_count: int


def is_balanced(lhs: Collection, rhs: Collection) -> BalanceResult:
    """Compare the two matching multisets; on failure report a witness
    matching with differing multiplicities (the smallest in sorted order)."""
    if (lhs.p, lhs.q) != (rhs.p, rhs.q):
        raise MatchingError("collections have different (p, q)")
    left = matching_multiset(lhs)
    right = matching_multiset(rhs)
    if left == right:
        return BalanceResult(True, None, 0, 0)
    for m in sorted(set(left) | set(right), key=lambda m: m.arcs):
        if left[m] != right[m]:
            return BalanceResult(False, m, left[m], right[m])
    raise AssertionError("unreachable")


def parse_collection_pair(text: str) -> tuple[Collection, Collection]:
    """First line "p q"; then one subset per line, the two blocks separated by
    a line "--"."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatchingError("empty collection file")
    try:
        p, q = (int(x) for x in lines[0].split())
    except ValueError:
        raise MatchingError("first line must be 'p q'") from None
    blocks: list[list[tuple[int, ...]]] = [[]]
    for ln in lines[1:]:
        if ln == "--":
            blocks.append([])
            continue
        try:
            blocks[-1].append(tuple(int(x) for x in ln.split()))
        except ValueError:
            raise MatchingError(f"bad subset line: {ln!r}") from None
    if len(blocks) != 2:
        raise MatchingError("expected exactly one '--' separator")
    return collection(p, q, blocks[0]), collection(p, q, blocks[1])


def write_collection_pair(lhs: Collection, rhs: Collection) -> str:
    lines = [f"{lhs.p} {lhs.q}"]
    lines += [" ".join(str(x) for x in m) for m in lhs.members]
    lines.append("--")
    lines += [" ".join(str(x) for x in m) for m in rhs.members]
    return "\n".join(lines) + "\n"

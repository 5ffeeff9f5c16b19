"""Flag flows, (I,J)-flows, flow-generated functions, and the path matrix.

Enumeration is backtracking over sink-ordered path extension with reachability
pruning; planarity plus the boundary order of the terminals force the k-th
smallest chosen source to feed the k-th chosen sink, so only that pairing is
generated.  Vertex sets are tracked as integer bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping

from .network import SPLIT, PlanarNetwork
from .semiring import STAR, Carrier, SemiringError, Starred


class FlowError(ValueError):
    pass


@dataclass(frozen=True)
class Flow:
    """Vertex-disjoint directed path system; path k runs from the k-th
    smallest selected source to the k-th selected sink."""

    paths: tuple[tuple[str, ...], ...]
    source_indices: tuple[int, ...]
    sink_indices: tuple[int, ...]
    network: PlanarNetwork = field(compare=False, repr=False)

    def edges(self) -> tuple[tuple[str, str], ...]:
        out = []
        for path in self.paths:
            out.extend(zip(path, path[1:]))
        return tuple(out)

    def vertex_set(self) -> frozenset[str]:
        return frozenset(v for path in self.paths for v in path)


@lru_cache(maxsize=None)
def _reach_data(net: PlanarNetwork):
    """Vertex bit indices and, per vertex, the bitmask of vertices it reaches
    (itself included)."""
    index = {v: i for i, v in enumerate(net.vertices)}
    indeg = {v: 0 for v in net.vertices}
    for v in net.vertices:
        for u in net.out(v):
            indeg[u] += 1
    order = [v for v in net.vertices if indeg[v] == 0]
    queue = list(order)
    while queue:
        v = queue.pop()
        for u in net.out(v):
            indeg[u] -= 1
            if indeg[u] == 0:
                order.append(u)
                queue.append(u)
    if len(order) != len(net.vertices):
        raise FlowError("network contains a directed cycle")
    reach = {}
    for v in reversed(order):
        mask = 1 << index[v]
        for u in net.out(v):
            mask |= reach[u]
        reach[v] = mask
    return index, reach


def _systems(net: PlanarNetwork, srcs: tuple[str, ...], dsts: tuple[str, ...]):
    """All disjoint path systems pairing srcs[k] -> dsts[k], in lexicographic
    order of the vertex sequences."""
    index, reach = _reach_data(net)
    for v in srcs + dsts:
        if v not in index:
            raise FlowError(f"terminal {v!r} is not a vertex")
    m = len(srcs)
    future = [0] * (m + 1)
    for k in range(m - 1, -1, -1):
        future[k] = future[k + 1] | (1 << index[srcs[k]]) | (1 << index[dsts[k]])

    def go(k: int, used: int):
        if k == m:
            yield ()
            return
        s, t = srcs[k], dsts[k]
        sbit, tbit = 1 << index[s], 1 << index[t]
        blocked = used | future[k + 1]
        if blocked & sbit or blocked & tbit or not reach[s] & tbit:
            return
        path = [s]

        def extend(v: str, taken: int):
            if v == t:
                frozen = tuple(path)
                for rest in go(k + 1, taken):
                    yield (frozen,) + rest
                return
            for u in net.out(v):
                ubit = 1 << index[u]
                if (taken | blocked) & ubit or not reach[u] & tbit:
                    continue
                path.append(u)
                yield from extend(u, taken | ubit)
                path.pop()

        yield from extend(s, used | sbit)

    yield from go(0, 0)


def _check_indices(label: str, ids: Iterable[int], n: int) -> tuple[int, ...]:
    out = tuple(sorted(ids))
    if len(set(out)) != len(out):
        raise FlowError(f"repeated {label} index")
    for i in out:
        if not 1 <= i <= n:
            raise FlowError(f"{label} index {i} outside 1..{n}")
    return out


@lru_cache(maxsize=None)
def _flag_flows(net: PlanarNetwork, I: tuple[int, ...]) -> tuple[Flow, ...]:
    if len(I) > len(net.sinks):
        return ()
    srcs = tuple(net.sources[i - 1] for i in I)
    dsts = tuple(net.sinks[: len(I)])
    sink_ids = tuple(range(1, len(I) + 1))
    return tuple(
        Flow(paths=paths, source_indices=I, sink_indices=sink_ids, network=net)
        for paths in _systems(net, srcs, dsts)
    )


def enumerate_flag_flows(net: PlanarNetwork, I: Iterable[int]) -> tuple[Flow, ...]:
    """All flag flows for I: disjoint paths from the sources indexed by I to
    the first |I| sinks.  Empty tuple when none exist; the empty index set has
    exactly one (empty) flow."""
    return _flag_flows(net, _check_indices("source", I, len(net.sources)))


@lru_cache(maxsize=None)
def _ij_flows(net: PlanarNetwork, I: tuple[int, ...], J: tuple[int, ...]) -> tuple[Flow, ...]:
    srcs = tuple(net.sources[i - 1] for i in I)
    dsts = tuple(net.sinks[j - 1] for j in J)
    return tuple(
        Flow(paths=paths, source_indices=I, sink_indices=J, network=net)
        for paths in _systems(net, srcs, dsts)
    )


def enumerate_flows(net: PlanarNetwork, I: Iterable[int], J: Iterable[int]) -> tuple[Flow, ...]:
    """All (I, J)-flows: disjoint paths from sources S_I to sinks T_J."""
    I = _check_indices("source", I, len(net.sources))
    J = _check_indices("sink", J, len(net.sinks))
    if len(I) != len(J):
        raise FlowError("index sets must have equal size")
    return _ij_flows(net, I, J)


def flow_weight(net: PlanarNetwork, weighting: Mapping, flow: Flow, carrier: Carrier):
    """Product of vertex weights along the flow.

    On a split network the weight sits on the split-edges, keyed by the
    original vertex; on an unsplit network it is the product over all path
    vertices."""
    values = []
    if net.is_split:
        for path in flow.paths:
            for edge in zip(path, path[1:]):
                if net.kind(edge) == SPLIT:
                    values.append(_weight_of(weighting, net.origin_of(edge[0])))
    else:
        for path in flow.paths:
            for v in path:
                values.append(_weight_of(weighting, v))
    return carrier.product(values)


def _weight_of(weighting: Mapping, v):
    try:
        return weighting[v]
    except KeyError:
        raise FlowError(f"weighting is missing vertex {v!r}") from None


def undefined_value(carrier: Carrier):
    """What an empty flow sum evaluates to: the carrier zero when there is
    one, STAR under the adapter, otherwise None (undefined)."""
    if isinstance(carrier, Starred):
        return STAR
    if carrier.has_zero:
        return carrier.zero
    return None


def evaluate_fgf(net: PlanarNetwork, weighting: Mapping, I: Iterable[int], carrier: Carrier):
    """The flow-generated function: sum over flag flows of the weight product.

    Returns the undefined marker of the carrier when no flow exists."""
    flows = enumerate_flag_flows(net, I)
    if not flows:
        return undefined_value(carrier)
    total = None
    for flow in flows:
        w = flow_weight(net, weighting, flow, carrier)
        total = w if total is None else carrier.add(total, w)
    return total


class FlowFunction:
    """Memoized f(I) for one (network, weighting, carrier) triple."""

    def __init__(self, net: PlanarNetwork, weighting: Mapping, carrier: Carrier):
        self.network = net
        self.weighting = dict(weighting)
        self.carrier = carrier
        self._memo = {}

    def __call__(self, I: Iterable[int]):
        key = frozenset(I)
        if key not in self._memo:
            self._memo[key] = evaluate_fgf(self.network, self.weighting, key, self.carrier)
        return self._memo[key]


def lindstrom_matrix(net: PlanarNetwork, weighting: Mapping, carrier: Carrier):
    """n x n matrix whose (j, i) entry is the path-weight sum from source i to
    sink j; its minors equal the (I, J)-flow sums."""
    if not carrier.is_ring:
        raise SemiringError(f"{carrier.name} is not a ring")
    n = len(net.sources)
    if len(net.sinks) != n:
        raise FlowError("path matrix needs equally many sources and sinks")
    rows = []
    for j in range(1, n + 1):
        row = []
        for i in range(1, n + 1):
            total = carrier.zero
            for flow in enumerate_flows(net, (i,), (j,)):
                total = carrier.add(total, flow_weight(net, weighting, flow, carrier))
            row.append(total)
        rows.append(tuple(row))
    return tuple(rows)


def _parity(perm: tuple[int, ...]) -> int:
    inv = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                inv += 1
    return inv & 1


def minor(matrix, I: Iterable[int], J: Iterable[int], carrier: Carrier):
    """Determinant of the submatrix with column set I and row set J, by the
    signed Leibniz expansion.  The empty minor is one."""
    if not carrier.is_ring:
        raise SemiringError(f"{carrier.name} is not a ring")
    cols = sorted(I)
    rows = sorted(J)
    if len(cols) != len(rows):
        raise FlowError("minor needs |I| = |J|")
    k = len(cols)
    if k == 0:
        return carrier.one
    sub = [[matrix[j - 1][i - 1] for i in cols] for j in rows]
    total = carrier.zero
    for perm in permutations(range(k)):
        term = carrier.one
        for r in range(k):
            term = carrier.mul(term, sub[r][perm[r]])
        if _parity(perm):
            term = carrier.neg(term)
        total = carrier.add(total, term)
    return total

"""Planar acyclic networks: data model, half-grid builder, vertex split.

Vertex ids are opaque strings (no whitespace).  Planarity of user-supplied
graphs is declared, never verified; the library builders are planar by
construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field


class NetworkError(ValueError):
    pass


ORDINARY = "ordinary"
SPLIT = "split"
EXTRA = "extra"


@dataclass(frozen=True)
class PlanarNetwork:
    """Acyclic digraph with ordered source and sink lists.

    ``edge_kinds`` is nonempty exactly for networks produced by
    :func:`vertex_split`; ``origins`` then maps each split vertex back to the
    vertex it came from.  Coordinates are rendering metadata only.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    sources: tuple[str, ...]
    sinks: tuple[str, ...]
    edge_kinds: tuple[str, ...] = ()
    origins: tuple[tuple[str, str], ...] = ()
    planarity: str = "constructed"
    coords: tuple[tuple[str, float, float], ...] = field(default=(), compare=False)

    def __post_init__(self):
        out = {v: [] for v in self.vertices}
        inc = {v: [] for v in self.vertices}
        for tail, head in self.edges:
            if tail in out and head in inc:
                out[tail].append(head)
                inc[head].append(tail)
        object.__setattr__(self, "_out", {v: tuple(sorted(ns)) for v, ns in out.items()})
        object.__setattr__(self, "_in", {v: tuple(sorted(ns)) for v, ns in inc.items()})
        object.__setattr__(self, "_vset", frozenset(self.vertices))
        object.__setattr__(self, "_kind", dict(zip(self.edges, self.edge_kinds)))
        object.__setattr__(self, "_origin", dict(self.origins))

    @property
    def is_split(self) -> bool:
        return bool(self.edge_kinds)

    def out(self, v: str) -> tuple[str, ...]:
        return self._out.get(v, ())

    def into(self, v: str) -> tuple[str, ...]:
        return self._in.get(v, ())

    def kind(self, edge: tuple[str, str]) -> str:
        return self._kind.get(edge, ORDINARY)

    def origin_of(self, v: str) -> str | None:
        return self._origin.get(v)

    def original_vertices(self) -> tuple[str, ...]:
        """Pre-split vertex ids, in their original order, for split networks."""
        seen = []
        met = set()
        for _, orig in self.origins:
            if orig not in met:
                met.add(orig)
                seen.append(orig)
        return tuple(seen)


def build_half_grid(n: int) -> PlanarNetwork:
    """Triangular grid with sources on the bottom row and sinks on the diagonal.

    Vertices are the points (i, j) with 1 <= j <= i <= n, named "i,j"; edges
    run west from (i, j) to (i-1, j) and north to (i, j+1); the i-th source is
    (i, 1) and the i-th sink is (i, i).
    """
    if n < 1:
        raise NetworkError("half-grid needs n >= 1")
    vertices = []
    coords = []
    edges = []
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            vertices.append(half_grid_vertex(i, j))
            coords.append((half_grid_vertex(i, j), float(i), float(j)))
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            if i - 1 >= j:
                edges.append((half_grid_vertex(i, j), half_grid_vertex(i - 1, j)))
            if j + 1 <= i:
                edges.append((half_grid_vertex(i, j), half_grid_vertex(i, j + 1)))
    sources = tuple(half_grid_vertex(i, 1) for i in range(1, n + 1))
    sinks = tuple(half_grid_vertex(i, i) for i in range(1, n + 1))
    return PlanarNetwork(
        vertices=tuple(vertices),
        edges=tuple(edges),
        sources=sources,
        sinks=sinks,
        coords=tuple(coords),
    )


def half_grid_vertex(i: int, j: int) -> str:
    return f"{i},{j}"


def random_grid_network(n: int, rows: int, rng: random.Random) -> PlanarNetwork:
    """Random planar acyclic network on an n-wide, (rows+1)-high grid.

    All upward edges and the complete bottom row are kept (weak connectivity);
    every other westward edge is kept with probability 1/2.  Sources are the
    bottom row, sinks the top row, so the boundary carries the terminals in
    the required cyclic order.
    """
    if n < 1 or rows < 1:
        raise NetworkError("grid needs n >= 1 and rows >= 1")

    def name(i, r):
        return f"{i}:{r}"

    vertices = [name(i, r) for r in range(rows + 1) for i in range(1, n + 1)]
    coords = [(name(i, r), float(i), float(r)) for r in range(rows + 1) for i in range(1, n + 1)]
    edges = []
    for r in range(rows + 1):
        for i in range(1, n + 1):
            if r < rows:
                edges.append((name(i, r), name(i, r + 1)))
            if i > 1 and (r == 0 or rng.random() < 0.5):
                edges.append((name(i, r), name(i - 1, r)))
    return PlanarNetwork(
        vertices=tuple(vertices),
        edges=tuple(edges),
        sources=tuple(name(i, 0) for i in range(1, n + 1)),
        sinks=tuple(name(i, rows) for i in range(1, n + 1)),
        coords=tuple(coords),
    )


def vertex_split(net: PlanarNetwork) -> PlanarNetwork:
    """Split every vertex v into (v', v'') joined by a split-edge.

    Each original edge (u, v) becomes the ordinary edge (u'', v'); fresh
    terminals s^i and t^j are attached by extra edges.  Every non-terminal
    vertex of the result is incident with exactly one split-edge, and a
    split-edge entering (leaving) a vertex forces in-degree (out-degree) one
    there; corresponding flows in both networks have equal weights once the
    vertex weighting is transferred to the split-edges.
    """
    if net.is_split:
        raise NetworkError("network is already split")
    prime = {v: v + "'" for v in net.vertices}
    second = {v: v + "''" for v in net.vertices}
    src_terms = tuple(f"s^{i}" for i in range(1, len(net.sources) + 1))
    snk_terms = tuple(f"t^{j}" for j in range(1, len(net.sinks) + 1))
    fresh = list(prime.values()) + list(second.values()) + list(src_terms) + list(snk_terms)
    clash = set(fresh) & set(net.vertices)
    if len(set(fresh)) != len(fresh) or clash:
        raise NetworkError("vertex ids collide with split names")

    vertices = list(src_terms)
    for v in net.vertices:
        vertices.append(prime[v])
        vertices.append(second[v])
    vertices.extend(snk_terms)

    edges = []
    kinds = []
    for i, s in enumerate(net.sources):
        edges.append((src_terms[i], prime[s]))
        kinds.append(EXTRA)
    for v in net.vertices:
        edges.append((prime[v], second[v]))
        kinds.append(SPLIT)
    for u, v in net.edges:
        edges.append((second[u], prime[v]))
        kinds.append(ORDINARY)
    for j, t in enumerate(net.sinks):
        edges.append((second[t], snk_terms[j]))
        kinds.append(EXTRA)

    origins = []
    for v in net.vertices:
        origins.append((prime[v], v))
        origins.append((second[v], v))

    return PlanarNetwork(
        vertices=tuple(vertices),
        edges=tuple(edges),
        sources=src_terms,
        sinks=snk_terms,
        edge_kinds=tuple(kinds),
        origins=tuple(origins),
        planarity=net.planarity,
    )


def _find_cycle(net: PlanarNetwork) -> list[str] | None:
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v: WHITE for v in net.vertices}
    parent: dict[str, str] = {}
    for root in net.vertices:
        if color[root] != WHITE:
            continue
        stack = [(root, iter(net.out(root)))]
        color[root] = GRAY
        while stack:
            v, it = stack[-1]
            advanced = False
            for u in it:
                if u not in color:
                    continue
                if color[u] == WHITE:
                    color[u] = GRAY
                    parent[u] = v
                    stack.append((u, iter(net.out(u))))
                    advanced = True
                    break
                if color[u] == GRAY:
                    cycle = [u, v]
                    w = v
                    while w != u:
                        w = parent[w]
                        cycle.append(w)
                    cycle.reverse()
                    return cycle
            if not advanced:
                color[v] = BLACK
                stack.pop()
    return None


def validate(net: PlanarNetwork) -> list[str]:
    """Structural violations as human-readable strings; empty means accepted.

    Planarity is not checked (declared by the builder or the user)."""
    problems = []
    seen = set()
    for v in net.vertices:
        if v in seen:
            problems.append(f"duplicate vertex: {v}")
        seen.add(v)
    for label, group in (("source", net.sources), ("sink", net.sinks)):
        met = set()
        for v in group:
            if v in met:
                problems.append(f"duplicate {label}: {v}")
            met.add(v)
            if v not in seen:
                problems.append(f"{label} not a vertex: {v}")
    for i, s in enumerate(net.sources):
        for j, t in enumerate(net.sinks):
            if s == t:
                first = i == 0 and j == 0
                last = i == len(net.sources) - 1 and j == len(net.sinks) - 1
                if not (first or last):
                    problems.append(f"source s{i + 1} coincides with sink t{j + 1}: {s}")
    edge_seen = set()
    for tail, head in net.edges:
        if tail not in seen:
            problems.append(f"dangling edge ({tail}, {head}): unknown tail")
        if head not in seen:
            problems.append(f"dangling edge ({tail}, {head}): unknown head")
        if tail == head:
            problems.append(f"self-loop at {tail}")
        if (tail, head) in edge_seen:
            problems.append(f"duplicate edge ({tail}, {head})")
        edge_seen.add((tail, head))
    if net.edge_kinds and len(net.edge_kinds) != len(net.edges):
        problems.append("edge kind list does not match edge list")
    cycle = _find_cycle(net)
    if cycle:
        problems.append("cycle: " + " -> ".join(cycle))
    return problems


def write_network(net: PlanarNetwork) -> str:
    """Text form: vertex lines (with coordinates when known), edges, terminals."""
    coord = {v: (x, y) for v, x, y in net.coords}
    lines = []
    for v in net.vertices:
        if v in coord:
            x, y = coord[v]
            lines.append(f"vertex {v} {x} {y}")
        else:
            lines.append(f"vertex {v}")
    for tail, head in net.edges:
        lines.append(f"edge {tail} {head}")
    lines.append("sources " + " ".join(net.sources))
    lines.append("sinks " + " ".join(net.sinks))
    return "\n".join(lines) + "\n"


def parse_network(text: str) -> PlanarNetwork:
    """Inverse of :func:`write_network`; directives may come in any order."""
    vertices = []
    coords = []
    edges = []
    sources = []
    sinks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        directive, args = parts[0], parts[1:]
        if directive == "vertex":
            if len(args) not in (1, 3):
                raise NetworkError(f"line {lineno}: vertex takes id or id x y")
            vertices.append(args[0])
            if len(args) == 3:
                try:
                    coords.append((args[0], float(args[1]), float(args[2])))
                except ValueError:
                    raise NetworkError(f"line {lineno}: bad coordinates") from None
        elif directive == "edge":
            if len(args) != 2:
                raise NetworkError(f"line {lineno}: edge takes tail and head")
            edges.append((args[0], args[1]))
        elif directive == "sources":
            sources.extend(args)
        elif directive == "sinks":
            sinks.extend(args)
        else:
            raise NetworkError(f"line {lineno}: unknown directive {directive!r}")
    if not sources or not sinks:
        raise NetworkError("network text needs sources and sinks lines")
    return PlanarNetwork(
        vertices=tuple(vertices),
        edges=tuple(edges),
        sources=tuple(sources),
        sinks=tuple(sinks),
        planarity="declared",
        coords=tuple(coords),
    )

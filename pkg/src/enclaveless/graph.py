"""Immutable simple graphs over bit-mask vertex sets.

A vertex set is a plain ``int`` whose bit ``v`` is set when vertex ``v`` is a
member. Every module in the package speaks this currency.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping

MAX_ORDER = 64
DEFAULT_CLIQUE_CAP = 100_000

INFINITY = float("inf")


class GraphError(ValueError):
    """Raised for malformed graph input or unsupported graph sizes."""


class CapExceeded(RuntimeError):
    """Raised when an exhaustive routine is asked to run past its size cap."""


def bits(mask: int) -> Iterator[int]:
    """Yield the members of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the open neighborhood of ``v`` as a bit mask. Labels are
    free-form metadata used by generators and scripted strategies; they take
    no part in equality or hashing.
    """

    n: int
    adj: tuple[int, ...]
    labels: Mapping[int, str] = field(default_factory=dict, compare=False, hash=False)

    @property
    def all(self) -> int:
        return (1 << self.n) - 1

    def closed(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def size(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def label_index(self) -> dict[str, int]:
        """Map each label back to its vertex id."""
        return {text: v for v, text in self.labels.items()}

    def induced(self, vertices: int) -> "Graph":
        """Subgraph induced on ``vertices``, renumbered in ascending id order."""
        keep = list(bits(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        adj = tuple(mask_of(pos[u] for u in bits(self.adj[v] & vertices)) for v in keep)
        return Graph(len(keep), adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def build_graph(n: int, edges: Iterable[tuple[int, int]], labels: Mapping[int, str] | None = None) -> Graph:
    """Build a graph from an edge list; duplicate edges collapse."""
    if not 1 <= n <= MAX_ORDER:
        raise GraphError(f"order {n} outside supported range 1..{MAX_ORDER}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj), dict(labels or {}))


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} outside 0..{g.n - 1}")


def closed_neighborhood(g: Graph, v: int) -> int:
    _check_vertex(g, v)
    return g.closed(v)


def degree_profile(g: Graph) -> tuple[int, int, bool, int | None]:
    """Return ``(min degree, max degree, is_regular, k or None)``."""
    degs = [g.degree(v) for v in range(g.n)]
    lo, hi = min(degs), max(degs)
    return lo, hi, lo == hi, lo if lo == hi else None


def component_of(g: Graph, v: int) -> int:
    seen = frontier = 1 << v
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj[u]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    return component_of(g, 0) == g.all


def is_isolate_free(g: Graph) -> bool:
    return all(g.adj)


def is_tree(g: Graph) -> bool:
    return is_connected(g) and g.size == g.n - 1


def is_clique(g: Graph, vertices: int) -> bool:
    return all(vertices & ~g.closed(v) == 0 for v in bits(vertices))


def is_independent_in(g: Graph, vertices: int) -> bool:
    return all(g.adj[v] & vertices == 0 for v in bits(vertices))


def has_induced_star(g: Graph, s: int) -> bool:
    """True when some vertex has ``s`` pairwise non-adjacent neighbors."""
    if s < 2:
        raise GraphError("induced star test needs s >= 2")
    for v in range(g.n):
        if g.degree(v) < s:
            continue
        if _has_independent_subset(g, g.adj[v], s):
            return True
    return False


def _has_independent_subset(g: Graph, pool: int, s: int) -> bool:
    if s == 0:
        return True
    if pool.bit_count() < s:
        return False
    low = pool & -pool
    v = low.bit_length() - 1
    rest = pool ^ low
    return _has_independent_subset(g, rest & ~g.adj[v], s - 1) or _has_independent_subset(g, rest, s)


def is_claw_free(g: Graph) -> bool:
    return not has_induced_star(g, 3)


def is_simplicial(g: Graph, v: int) -> bool:
    _check_vertex(g, v)
    return is_clique(g, g.adj[v])


def line_graph(g: Graph) -> tuple[Graph, list[tuple[int, int]]]:
    """Line graph plus the edge each new vertex stands for."""
    edges = g.edges()
    if not edges:
        raise GraphError("line graph of an edgeless graph is empty")
    lg_edges = [
        (i, j)
        for (i, e), (j, f) in combinations(enumerate(edges), 2)
        if e[0] in f or e[1] in f
    ]
    return build_graph(len(edges), lg_edges), edges


def maximal_cliques(g: Graph, cap: int = DEFAULT_CLIQUE_CAP) -> list[int]:
    """All maximal cliques as masks (pivoted Bron-Kerbosch)."""
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            if len(out) > cap:
                raise CapExceeded(f"more than {cap} maximal cliques")
            return
        pivot = max(bits(p | x), key=lambda u: (p & g.adj[u]).bit_count())
        for v in bits(p & ~g.adj[pivot]):
            expand(r | 1 << v, p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, g.all, 0)
    return sorted(out)


def clique_graph(g: Graph, cap: int = DEFAULT_CLIQUE_CAP) -> Graph:
    cliques = maximal_cliques(g, cap)
    pairs = [(i, j) for i, j in combinations(range(len(cliques)), 2) if cliques[i] & cliques[j]]
    return build_graph(len(cliques), pairs)


def corona(g: Graph) -> Graph:
    """Attach one pendant vertex ``n + v`` to every vertex ``v``."""
    if g.n > MAX_ORDER // 2:
        raise GraphError(f"corona of order-{g.n} graph exceeds {MAX_ORDER} vertices")
    n = g.n
    edges = g.edges() + [(v, n + v) for v in range(n)]
    labels = {v: f"x{v}" for v in range(n)} | {n + v: f"y{v}" for v in range(n)}
    return build_graph(2 * n, edges, labels)


def distance(g: Graph, u: int, v: int) -> float:
    """Hop count from ``u`` to ``v``; ``inf`` when disconnected."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    dist = {u: 0}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        if w == v:
            return dist[w]
        for x in bits(g.adj[w]):
            if x not in dist:
                dist[x] = dist[w] + 1
                queue.append(x)
    return INFINITY

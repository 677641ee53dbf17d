"""Generators for the graph families used by the game bounds.

Vertex numbering is part of each generator's contract because scripted
strategies address vertices through the labels attached here.

* ``corona_path(n)``: ``x_i`` is vertex ``i - 1`` and its pendant ``y_i`` is
  vertex ``n + i - 1``. Labels read ``x3``/``y3``; when ``10 | n`` they carry
  the block as well, e.g. ``x13/B1``.
* ``connector_ring(m, r)``: block ``i`` (1-based) occupies ids
  ``(i-1)(r+1) .. i(r+1)-1`` in the order ``x_i, y_i`` then the hidden
  vertices. Labels read ``x2``, ``y2``, ``h2.1`` and so on.
* ``build_family_f``: A-vertices are labelled ``a<tree>.<u>-<v>``,
  B-vertices ``b<tree>.<v>`` and merged B-vertices ``c<tree>.<v>+<tree>.<w>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .graph import (
    MAX_ORDER,
    CapExceeded,
    Graph,
    GraphError,
    bits,
    build_graph,
    clique_graph,
    corona,
    degree_profile,
    is_connected,
    is_independent_in,
    is_simplicial,
    is_tree,
    line_graph,
)

MAX_TREE_ENUMERATION = 6


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(k: int) -> Graph:
    """K_{1,k} with hub 0."""
    if k < 1:
        raise GraphError("star needs k >= 1")
    return build_graph(k + 1, [(0, i) for i in range(1, k + 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


_BASIC = {"path": path, "cycle": cycle, "star": star, "complete": complete}


def basic(kind: str, n: int) -> Graph:
    try:
        maker = _BASIC[kind]
    except KeyError:
        raise GraphError(f"unknown basic family {kind!r}") from None
    return maker(n)


def double_star(k: int) -> Graph:
    """S(k,k): centers 0 and 1, leaves 2..k+1 on 0 and k+2..2k+1 on 1."""
    if k < 1:
        raise GraphError("double star needs k >= 1")
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(k)]
    edges += [(1, 2 + k + i) for i in range(k)]
    return build_graph(2 * k + 2, edges)


def corona_path(n: int) -> Graph:
    if n < 1:
        raise GraphError("corona_path needs n >= 1")
    if 2 * n > MAX_ORDER:
        raise GraphError(f"corona of P{n} exceeds {MAX_ORDER} vertices")
    edges = [(i, i + 1) for i in range(n - 1)] + [(i, n + i) for i in range(n)]
    labels = {}
    for i in range(1, n + 1):
        tag = f"/B{(i - 1) // 10}" if n % 10 == 0 else ""
        labels[i - 1] = f"x{i}{tag}"
        labels[n + i - 1] = f"y{i}{tag}"
    return build_graph(2 * n, edges, labels)


_PATH_LABEL = re.compile(r"^([xy])(\d+)(?:/B(\d+))?$")


def parse_corona_label(text: str) -> tuple[str, int, int | None]:
    """Split ``x13/B1`` into ``("x", 13, 1)``."""
    m = _PATH_LABEL.match(text)
    if not m:
        raise ValueError(f"not a corona-path label: {text!r}")
    return m.group(1), int(m.group(2)), None if m.group(3) is None else int(m.group(3))


def connector_ring(m: int, r: int) -> Graph:
    """The r-regular ring of m blocks K_{r+1} - x_i y_i joined y_i -> x_{i+1}."""
    if m < 2:
        raise GraphError("connector ring needs m >= 2")
    if r < 3:
        raise GraphError("connector ring needs r >= 3")
    n = m * (r + 1)
    if n > MAX_ORDER:
        raise GraphError(f"connector ring of order {n} exceeds {MAX_ORDER}")
    edges = []
    labels = {}
    for i in range(m):
        base = i * (r + 1)
        block = range(base, base + r + 1)
        edges += [(u, v) for u in block for v in block if u < v and (u, v) != (base, base + 1)]
        labels[base] = f"x{i + 1}"
        labels[base + 1] = f"y{i + 1}"
        for j in range(1, r):
            labels[base + 1 + j] = f"h{i + 1}.{j}"
        edges.append((base + 1, ((i + 1) % m) * (r + 1)))
    g = build_graph(n, edges, labels)
    lo, hi, regular, _ = degree_profile(g)
    if not regular or lo != r:
        raise GraphError("connector ring construction is not regular")
    return g


# -- extremal claw-free family -------------------------------------------

GlueEnd = tuple[int, int]


@dataclass(frozen=True)
class FamilyFSpec:
    """Trees as edge lists plus glue pairs.

    A glue end ``(i, v)`` names the pendant edge ``v v'`` of ``cor(T_i)``,
    i.e. the line-graph vertex standing for that pendant edge.
    """

    trees: tuple[tuple[tuple[int, int], ...], ...]
    glue_pairs: tuple[tuple[GlueEnd, GlueEnd], ...] = ()

    @classmethod
    def of(cls, trees: Sequence[Sequence[tuple[int, int]]], glue_pairs: Sequence = ()) -> "FamilyFSpec":
        return cls(
            tuple(tuple(tuple(e) for e in t) for t in trees),
            tuple((tuple(a), tuple(b)) for a, b in glue_pairs),
        )


@dataclass(frozen=True)
class PartitionedGraph:
    graph: Graph
    A: int
    B: int


class FamilyError(GraphError):
    pass


def tree_graph(edges: Sequence[tuple[int, int]]) -> Graph:
    if not edges:
        raise FamilyError("trees in the family must be non-trivial")
    n = 1 + max(max(e) for e in edges)
    t = build_graph(n, edges)
    if not is_tree(t):
        raise FamilyError(f"edge list {list(edges)} is not a tree")
    return t


def build_family_f(spec: FamilyFSpec) -> PartitionedGraph:
    trees = [tree_graph(t) for t in spec.trees]
    q = len(trees)
    if q == 0:
        raise FamilyError("family spec needs at least one tree")
    if len(spec.glue_pairs) != q - 1:
        raise FamilyError(f"{q} trees need {q - 1} glue pairs, got {len(spec.glue_pairs)}")

    # Disjoint union of the line graphs of the coronas.
    offsets, pendant_id, lines = [], {}, []
    total = 0
    for i, t in enumerate(trees):
        lg, edge_map = line_graph(corona(t))
        lines.append((lg, edge_map))
        offsets.append(total)
        for k, (u, v) in enumerate(edge_map):
            if v == u + t.n:
                pendant_id[(i, u)] = total + k
        total += lg.n

    union_adj = [0] * total
    kind, labels = {}, {}
    for i, (lg, edge_map) in enumerate(lines):
        off, tn = offsets[i], trees[i].n
        for k, (u, v) in enumerate(edge_map):
            union_adj[off + k] = lg.adj[k] << off
            if v == u + tn:
                kind[off + k], labels[off + k] = "B", f"b{i}.{u}"
            else:
                kind[off + k], labels[off + k] = "A", f"a{i}.{u}-{v}"
    union = Graph(total, tuple(union_adj))

    seen_ends = set()
    merge = {}
    for (i, v), (j, w) in spec.glue_pairs:
        if i == j:
            raise FamilyError(f"glue pair joins tree {i} to itself")
        for end in ((i, v), (j, w)):
            if not 0 <= end[0] < q:
                raise FamilyError(f"glue end {end} names a missing tree")
            if end not in pendant_id:
                raise FamilyError(f"glue end {end} is not a pendant edge of cor(T_{end[0]})")
            if end in seen_ends:
                raise FamilyError(f"glue vertex {end} used twice")
            seen_ends.add(end)
            if not is_simplicial(union, pendant_id[end]):
                raise FamilyError(f"glue vertex {end} is not simplicial")
        a, b = pendant_id[(i, v)], pendant_id[(j, w)]
        if union.adj[a] >> b & 1 or union.adj[a] & union.adj[b]:
            raise FamilyError(f"contracting {(i, v)} with {(j, w)} would create parallel structure")
        merge[b] = a
        labels[a] = f"c{i}.{v}+{j}.{w}"

    keep = [v for v in range(total) if v not in merge]
    new_id = {v: k for k, v in enumerate(keep)}
    for b, a in merge.items():
        new_id[b] = new_id[a]
    if len(keep) > MAX_ORDER:
        raise FamilyError(f"family member of order {len(keep)} exceeds {MAX_ORDER}")
    edges = {(min(new_id[u], new_id[v]), max(new_id[u], new_id[v])) for u, v in union.edges()}
    g = build_graph(len(keep), sorted(edges), {new_id[v]: labels[v] for v in keep})
    A = sum(1 << new_id[v] for v in keep if kind[v] == "A")
    B = sum(1 << new_id[v] for v in keep if kind[v] == "B")

    if not is_tree(clique_graph(g)):
        raise FamilyError("clique graph of the contracted graph is not a tree")
    check_partition(g, A, B)
    return PartitionedGraph(g, A, B)


def check_partition(g: Graph, A: int, B: int) -> None:
    """Raise unless (A, B) has the shape of the partition associated with a member."""
    n = g.n
    problems = []
    if A | B != g.all or A & B:
        problems.append("A and B do not partition V")
    if 2 * A.bit_count() != n - 1 or 2 * B.bit_count() != n + 1:
        problems.append(f"|A|={A.bit_count()}, |B|={B.bit_count()} for n={n}")
    if not is_independent_in(g, B):
        problems.append("B is not independent")
    bad = [a for a in bits(A) if (g.adj[a] & B).bit_count() != 2]
    if bad:
        problems.append(f"A-vertices {bad} do not have exactly two B-neighbors")
    if not is_connected(g):
        problems.append("graph is not connected")
    if problems:
        raise FamilyError("; ".join(problems))


def small_trees(max_order: int = 4) -> list[tuple[tuple[int, int], ...]]:
    """One tree per isomorphism class, orders 2..4."""
    catalog = [
        ((0, 1),),
        ((0, 1), (1, 2)),
        ((0, 1), (1, 2), (2, 3)),
        ((0, 1), (0, 2), (0, 3)),
    ]
    if not 2 <= max_order <= 4:
        raise ValueError("small_trees covers orders 2..4")
    return [t for t in catalog if len(t) + 1 <= max_order]


def family_f_members(max_tree_order: int = 4, max_trees: int = 2) -> Iterator[tuple[FamilyFSpec, PartitionedGraph]]:
    """Members built from one or two small trees, every glue choice."""
    trees = small_trees(max_tree_order)
    for t in trees:
        spec = FamilyFSpec.of([t])
        yield spec, build_family_f(spec)
    if max_trees < 2:
        return
    for a in range(len(trees)):
        for b in range(a, len(trees)):
            ta, tb = trees[a], trees[b]
            for v, w in product(range(len(ta) + 1), range(len(tb) + 1)):
                spec = FamilyFSpec.of([ta, tb], [((0, v), (1, w))])
                yield spec, build_family_f(spec)


# -- labeled trees ----------------------------------------------------------

def tree_from_prufer(seq: Sequence[int]) -> Graph:
    n = len(seq) + 2
    if any(not 0 <= s < n for s in seq):
        raise GraphError(f"Prufer entries must lie in 0..{n - 1}")
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    edges = []
    for s in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, s))
        degree[leaf] -= 1
        degree[s] -= 1
    u, w = (v for v in range(n) if degree[v] == 1)
    edges.append((u, w))
    return build_graph(n, edges)


def enumerate_labeled_trees(n: int) -> Iterator[Graph]:
    if n < 2:
        raise GraphError("labeled tree enumeration needs n >= 2")
    if n > MAX_TREE_ENUMERATION:
        raise CapExceeded(f"labeled tree enumeration capped at n <= {MAX_TREE_ENUMERATION}")
    for seq in product(range(n), repeat=n - 2):
        yield tree_from_prufer(seq)


# -- spec file grammar ------------------------------------------------------

_EDGE = re.compile(r"^(\d+)-(\d+)$")
_GLUE = re.compile(r"\(\s*(\d+)\s*:\s*(\d+)\s*,\s*(\d+)\s*:\s*(\d+)\s*\)")


def parse_family_spec(text: str) -> FamilyFSpec:
    """Parse the plain-text family spec format.

    Blank lines and ``#`` comments are ignored. A line starting with ``(``
    holds one or more glue tuples ``(i:v, j:w)``; any other line is one tree
    written as whitespace-separated edges ``u-v``.
    """
    trees, glue = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("("):
            found = _GLUE.findall(line)
            if not found or _GLUE.sub("", line).strip(" ,;"):
                raise FamilyError(f"line {lineno}: malformed glue pairs {raw!r}")
            glue += [((int(a), int(b)), (int(c), int(d))) for a, b, c, d in found]
            continue
        edges = []
        for token in line.replace(",", " ").split():
            m = _EDGE.match(token)
            if not m:
                raise FamilyError(f"line {lineno}: malformed edge {token!r}")
            edges.append((int(m.group(1)), int(m.group(2))))
        trees.append(tuple(edges))
    return FamilyFSpec.of(trees, glue)


def format_family_spec(spec: FamilyFSpec) -> str:
    lines = [" ".join(f"{u}-{v}" for u, v in t) for t in spec.trees]
    lines += [f"({i}:{v}, {j}:{w})" for (i, v), (j, w) in spec.glue_pairs]
    return "\n".join(lines) + "\n"

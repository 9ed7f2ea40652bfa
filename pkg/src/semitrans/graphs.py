"""Undirected graphs, split partitions, twin reduction and neighborhood matrices.

Vertices are dense integers 1..n so that clique/independent orderings can be
used directly as matrix row/column indices.  All values are immutable after
construction; every operation here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .matrices import BinaryMatrix


class GraphFormatError(ValueError):
    """Malformed graph file; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n, edges stored as (u, v) with u < v."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            norm.add((u, v) if u < v else (v, u))
        return Graph(n, frozenset(norm))

    @property
    def adjacency(self) -> dict[int, frozenset[int]]:
        cached = self.__dict__.get("_adjacency")
        if cached is None:
            adj: dict[int, set[int]] = {v: set() for v in range(1, self.n + 1)}
            for u, v in self.edges:
                adj[u].add(v)
                adj[v].add(u)
            cached = {v: frozenset(s) for v, s in adj.items()}
            object.__setattr__(self, "_adjacency", cached)
        return cached

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    def vertices(self) -> range:
        return range(1, self.n + 1)


@dataclass(frozen=True)
class SplitPartition:
    """A graph together with a certified clique/independent-set bipartition.

    The clique and independent tuples are ordered; their order is the row and
    column order of every matrix derived from the partition.  The clique is
    required to be maximal in the sense that no independent vertex is adjacent
    to all of it.
    """

    graph: Graph
    clique: tuple[int, ...]
    independent: tuple[int, ...]

    def __post_init__(self):
        g = self.graph
        c, i = self.clique, self.independent
        if sorted(c + i) != list(g.vertices()):
            raise ValueError("clique and independent set must partition the vertices")
        cset = set(c)
        for x_idx, x in enumerate(c):
            for y in c[x_idx + 1:]:
                if not g.has_edge(x, y):
                    raise ValueError(f"clique vertices {x}, {y} are not adjacent")
        for x_idx, x in enumerate(i):
            for y in i[x_idx + 1:]:
                if g.has_edge(x, y):
                    raise ValueError(f"independent vertices {x}, {y} are adjacent")
        for v in i:
            if cset and cset <= g.neighbors(v):
                raise ValueError(f"independent vertex {v} is adjacent to all of the clique")
            if not cset:
                raise ValueError(f"independent vertex {v} with empty clique violates maximality")

    @property
    def k(self) -> int:
        return len(self.clique)

    @property
    def t(self) -> int:
        return len(self.independent)

    def independent_neighborhoods(self) -> list[frozenset[int]]:
        return [self.graph.neighbors(v) for v in self.independent]


@dataclass(frozen=True)
class TwinReduction:
    """Result of iterated twin removal: the reduced graph plus bookkeeping."""

    graph: Graph
    kept: tuple[int, ...]                      # kept[i] = original id of new vertex i+1
    removals: tuple[tuple[int, int], ...]      # (kept original id, removed original id)


def parse_graph(text: str) -> Graph:
    """Parse the plain graph file format; raises GraphFormatError on bad input."""
    return parse_graph_pinned(text)[0]


def parse_graph_pinned(text: str) -> tuple[Graph, Optional[tuple[int, ...]]]:
    """Parse a graph file, returning the optional pinned clique from a "C:" line.

    Format: first data line "n m", then m lines "u v" with 1 <= u < v <= n,
    optionally one final line "C: i1 i2 ...".  Blank lines and lines starting
    with "#" are ignored.
    """
    header: Optional[tuple[int, int]] = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    pinned: Optional[tuple[int, ...]] = None
    n = m = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2:
                raise GraphFormatError(line_no, "expected header 'n m'")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(line_no, "non-integer header") from None
            if n < 0 or m < 0:
                raise GraphFormatError(line_no, "negative header value")
            header = (n, m)
            continue
        if line.startswith("C:"):
            if pinned is not None:
                raise GraphFormatError(line_no, "duplicate 'C:' line")
            try:
                pins = tuple(int(tok) for tok in line[2:].split())
            except ValueError:
                raise GraphFormatError(line_no, "non-integer vertex id in 'C:' line") from None
            for v in pins:
                if not (1 <= v <= n):
                    raise GraphFormatError(line_no, f"clique vertex {v} out of range 1..{n}")
            if len(set(pins)) != len(pins):
                raise GraphFormatError(line_no, "repeated vertex in 'C:' line")
            pinned = pins
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(line_no, f"expected edge 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(line_no, "non-integer vertex id") from None
        if u == v:
            raise GraphFormatError(line_no, f"self-loop at {u}")
        if not (1 <= u < v <= n):
            raise GraphFormatError(line_no, f"edge ({u}, {v}) must satisfy 1 <= u < v <= {n}")
        if (u, v) in seen:
            raise GraphFormatError(line_no, f"duplicate edge ({u}, {v})")
        if len(edges) >= m:
            raise GraphFormatError(line_no, f"more than {m} edges")
        seen.add((u, v))
        edges.append((u, v))
    if header is None:
        raise GraphFormatError(1, "empty input")
    if len(edges) != m:
        raise GraphFormatError(1, f"header promised {m} edges, found {len(edges)}")
    return Graph(n, frozenset(edges)), pinned


def format_graph(g: Graph, clique: Optional[Iterable[int]] = None) -> str:
    """Render a graph (and optionally a pinned clique) in the graph file format."""
    lines = [f"{g.n} {len(g.edges)}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    if clique is not None:
        lines.append("C: " + " ".join(str(v) for v in clique))
    return "\n".join(lines) + "\n"


def normalize_partition(graph: Graph, clique: Iterable[int], independent: Iterable[int]) -> SplitPartition:
    """Restore clique maximality by absorbing independent vertices adjacent to all of it.

    The input must already satisfy the clique/independent invariants; vertices
    are moved one at a time (smallest id first), rechecking after each move
    since a move can disqualify other candidates.
    """
    c = list(clique)
    i = sorted(independent)
    cset = set(c)
    for x_idx, x in enumerate(c):
        for y in c[x_idx + 1:]:
            if not graph.has_edge(x, y):
                raise ValueError(f"clique vertices {x}, {y} are not adjacent")
    for x_idx, x in enumerate(i):
        for y in i[x_idx + 1:]:
            if graph.has_edge(x, y):
                raise ValueError(f"independent vertices {x}, {y} are adjacent")
    moved = True
    while moved:
        moved = False
        for v in i:
            if cset <= graph.neighbors(v):
                c.append(v)
                cset.add(v)
                i.remove(v)
                moved = True
                break
    return SplitPartition(graph, tuple(c), tuple(i))


def split_partition(g: Graph) -> Optional[SplitPartition]:
    """Find a split partition of g, or None if g is not a split graph.

    Uses the degree-sequence characterization: with degrees sorted descending,
    take h = max{i : d_i >= i-1}; g is split iff the h top-degree vertices form
    a clique and the rest are independent.  The candidate is verified directly,
    which doubles as the repair pass, then maximality is restored.
    """
    if g.n == 0:
        return SplitPartition(g, (), ())
    order = sorted(g.vertices(), key=lambda v: (-g.degree(v), v))
    degs = [g.degree(v) for v in order]
    h = 0
    for idx, d in enumerate(degs, start=1):
        if d >= idx - 1:
            h = idx
    cand_c, cand_i = order[:h], order[h:]
    for x_idx, x in enumerate(cand_c):
        for y in cand_c[x_idx + 1:]:
            if not g.has_edge(x, y):
                return None
    for x_idx, x in enumerate(cand_i):
        for y in cand_i[x_idx + 1:]:
            if g.has_edge(x, y):
                return None
    return normalize_partition(g, sorted(cand_c), sorted(cand_i))


def twin_reduce(g: Graph) -> TwinReduction:
    """Repeatedly remove one vertex of any twin pair (N(a)\\{b} == N(b)\\{a}).

    Covers both adjacent and non-adjacent twins; the smaller id is kept.  The
    reduced graph is relabeled to dense ids 1..n' with the original ids in
    `kept`; `removals` logs (kept, removed) pairs in original ids.
    """
    live = sorted(g.vertices())
    removed_pairs: list[tuple[int, int]] = []
    # restricting neighborhoods to live vertices as we go
    neigh = {v: set(g.neighbors(v)) for v in live}
    while True:
        pair = None
        for ai in range(len(live)):
            a = live[ai]
            na = neigh[a]
            for b in live[ai + 1:]:
                if na - {b} == neigh[b] - {a}:
                    pair = (a, b)
                    break
            if pair:
                break
        if pair is None:
            break
        a, b = pair
        live.remove(b)
        for v in neigh[b]:
            neigh[v].discard(b)
        del neigh[b]
        removed_pairs.append((a, b))
    relabel = {old: new for new, old in enumerate(live, start=1)}
    new_edges = {(min(relabel[u], relabel[v]), max(relabel[u], relabel[v]))
                 for u, v in g.edges if u in relabel and v in relabel}
    return TwinReduction(Graph(len(live), frozenset(new_edges)), tuple(live), tuple(removed_pairs))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the vertex set s, relabeled 1..|s| in sorted order.

    Returns the graph and the map new id -> original id.
    """
    svert = sorted(set(s))
    for v in svert:
        if not (1 <= v <= g.n):
            raise ValueError(f"vertex {v} not in graph")
    relabel = {old: new for new, old in enumerate(svert, start=1)}
    edges = {(relabel[u], relabel[v]) for u, v in g.edges if u in relabel and v in relabel}
    return Graph(len(svert), frozenset(edges)), {new: old for old, new in relabel.items()}


def neighborhood_matrix(p: SplitPartition) -> BinaryMatrix:
    """The k x t adjacency matrix between clique rows and independent columns.

    Row order is p.clique, column order is p.independent; columns are labeled
    with the independent vertex ids.
    """
    k = p.k
    cols = []
    for v in p.independent:
        nb = p.graph.neighbors(v)
        mask = 0
        for r, u in enumerate(p.clique):
            if u in nb:
                mask |= 1 << r
        cols.append(mask)
    return BinaryMatrix(k, p.t, tuple(cols), tuple(p.independent))

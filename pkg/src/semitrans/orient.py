"""Orientations of undirected graphs and semi-transitivity checking.

An orientation is semi-transitive when it is acyclic and no directed path
u1 -> ... -> ut with the closing edge u1 -> ut present misses a transitive
edge ui -> uj.  Such a violating configuration is a shortcut.

The detector uses the pair criterion: with reach-or-equal written as ~>, a
shortcut exists iff there are an edge (x, y) and a non-adjacent ordered pair
(a, b) with x ~> a ~> b ~> y.  Splicing explicit x~>a, a~>b, b~>y paths gives
the witness path (walks in a DAG have no repeated vertices across segments,
since a repeat would close a cycle), and conversely any violating path yields
such a pair, so the criterion is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .graphs import Graph
from .matrices import SizeGuardError


@dataclass(frozen=True)
class Orientation:
    """A direction (tail, head) for every edge of the base graph."""

    graph: Graph
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        seen = set()
        for u, v in self.arcs:
            e = (u, v) if u < v else (v, u)
            if e not in self.graph.edges:
                raise ValueError(f"arc ({u}, {v}) is not an edge of the base graph")
            if e in seen:
                raise ValueError(f"edge {e} oriented twice")
            seen.add(e)
        if len(seen) != len(self.graph.edges):
            raise ValueError("some edges are missing a direction")

    def out_neighbors(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in self.graph.vertices()}
        for u, v in self.arcs:
            out[u].append(v)
        for lst in out.values():
            lst.sort()
        return out

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs


@dataclass(frozen=True)
class ShortcutWitness:
    """A violating path, its closing edge, and one missing transitive edge."""

    path: tuple[int, ...]
    closing: tuple[int, int]
    missing: tuple[int, int]


def orient_by_order(g: Graph, order: Sequence[int]) -> Orientation:
    """Direct every edge from the earlier to the later vertex of a linear order."""
    if sorted(order) != list(g.vertices()):
        raise ValueError("order is not a permutation of the vertices")
    pos = {v: i for i, v in enumerate(order)}
    arcs = frozenset((u, v) if pos[u] < pos[v] else (v, u) for u, v in g.edges)
    return Orientation(g, arcs)


def topological_order(o: Orientation) -> Optional[list[int]]:
    """Kahn topological order of the arcs, or None if there is a directed cycle."""
    indeg = {v: 0 for v in o.graph.vertices()}
    out = o.out_neighbors()
    for _, v in o.arcs:
        indeg[v] += 1
    queue = sorted(v for v, d in indeg.items() if d == 0)
    order = []
    while queue:
        v = queue.pop(0)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
        queue.sort()
    return order if len(order) == o.graph.n else None


def is_acyclic(o: Orientation) -> bool:
    return topological_order(o) is not None


def _reach_masks(o: Orientation) -> list[int]:
    """reach[v-1] = bitmask of vertices reachable from v, including v itself.

    Memoized DFS from each vertex; vertices are processed so that successors
    finish first.
    """
    n = o.graph.n
    out = o.out_neighbors()
    reach = [0] * (n + 1)
    done = [False] * (n + 1)
    for s in o.graph.vertices():
        if done[s]:
            continue
        stack = [(s, iter(out[s]))]
        on_stack = {s}
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if not done[w]:
                    if w in on_stack:
                        raise ValueError("orientation contains a directed cycle")
                    stack.append((w, iter(out[w])))
                    on_stack.add(w)
                    advanced = True
                    break
            if not advanced:
                mask = 1 << (v - 1)
                for w in out[v]:
                    mask |= reach[w]
                reach[v] = mask
                done[v] = True
                on_stack.discard(v)
                stack.pop()
    return reach


def _shortest_path(o: Orientation, src: int, dst: int) -> list[int]:
    if src == dst:
        return [src]
    out = o.out_neighbors()
    parent = {src: 0}
    frontier = [src]
    while frontier:
        nxt = []
        for v in frontier:
            for w in out[v]:
                if w not in parent:
                    parent[w] = v
                    if w == dst:
                        path = [dst]
                        while path[-1] != src:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    nxt.append(w)
        frontier = nxt
    raise ValueError(f"no directed path {src} -> {dst}")


def find_shortcut(o: Orientation) -> Optional[ShortcutWitness]:
    """Smallest-witness shortcut of an acyclic orientation, or None.

    Deterministic: arcs are scanned in sorted order, then pair endpoints in
    ascending order.  Raises on a cyclic input.
    """
    n = o.graph.n
    reach = _reach_masks(o)  # raises on a cycle
    co_reach = [0] * (n + 1)
    for v in o.graph.vertices():
        bit = 1 << (v - 1)
        for u in o.graph.vertices():
            if reach[u] & bit:
                co_reach[v] |= 1 << (u - 1)
    adj_mask = [0] * (n + 1)
    for u, v in o.graph.edges:
        adj_mask[u] |= 1 << (v - 1)
        adj_mask[v] |= 1 << (u - 1)
    universe = (1 << n) - 1
    for x, y in sorted(o.arcs):
        candidates_a = reach[x]
        while candidates_a:
            low = candidates_a & -candidates_a
            a = low.bit_length()
            candidates_a ^= low
            bs = reach[a] & co_reach[y] & ~adj_mask[a] & ~(1 << (a - 1)) & universe
            if bs:
                b = (bs & -bs).bit_length()
                seg1 = _shortest_path(o, x, a)
                seg2 = _shortest_path(o, a, b)
                seg3 = _shortest_path(o, b, y)
                path = seg1 + seg2[1:] + seg3[1:]
                return ShortcutWitness(tuple(path), (x, y), (a, b))
    return None


def is_semi_transitive_orientation(o: Orientation) -> bool:
    if not is_acyclic(o):
        return False
    return find_shortcut(o) is None


def reverse_orientation(o: Orientation) -> Orientation:
    return Orientation(o.graph, frozenset((v, u) for u, v in o.arcs))


def _search_semi_transitive_order(g: Graph) -> Optional[list[int]]:
    """Lexicographically first vertex order whose orientation is shortcut-free.

    Prefix-pruned DFS with three cuts, none of which can skip the first valid
    permutation: a prefix whose induced orientation already contains a
    shortcut cannot extend to a shortcut-free orientation (induced
    sub-orientations of a shortcut-free orientation are shortcut-free); only
    the lexicographically least topological sort of each orientation is
    explored (the first valid permutation is necessarily its orientation's
    least topological sort); and prefixes whose every completion must create
    a shortcut are rejected by a one-step lookahead.
    """
    n = g.n
    if n == 0:
        return []
    adj = [0] * (n + 1)
    for u, v in g.edges:
        adj[u] |= 1 << (v - 1)
        adj[v] |= 1 << (u - 1)
    order: list[int] = []
    reach = [0] * (n + 1)
    co_reach = [0] * (n + 1)
    placed = 0
    universe = (1 << n) - 1

    def canonical(v: int) -> bool:
        # v may be appended only if every placed vertex after v's last placed
        # neighbor is smaller than v; otherwise the same orientation has a
        # lexicographically smaller topological sort already explored
        av = adj[v]
        for u in reversed(order):
            if av & (1 << (u - 1)):
                return True
            if u > v:
                return False
        return True

    def extend(v: int) -> bool:
        """Place v last; reject iff the prefix can no longer complete validly."""
        nonlocal placed
        bit = 1 << (v - 1)
        in_mask = adj[v] & placed
        gained = bit  # vertices that now reach v (v itself included)
        for u in order:
            if reach[u] & in_mask:
                reach[u] |= bit
                gained |= 1 << (u - 1)
        reach[v] = bit
        co_reach[v] = gained
        placed |= bit
        order.append(v)
        if not in_mask:
            return True
        # exact check: any new shortcut uses v as the closing-arc head: an arc
        # (x, v) and a non-adjacent ordered pair (a, b) with x ~> a ~> b ~> v
        m = 0
        im = in_mask
        while im:
            low = im & -im
            m |= reach[low.bit_length()]
            im ^= low
        am = m
        while am:
            low = am & -am
            a = low.bit_length()
            am ^= low
            if reach[a] & gained & ~adj[a] & ~low:
                return False
        # lookahead on the new pairs (a, v): an unplaced y adjacent to v and to
        # any placed x reaching a will close an unavoidable shortcut once
        # placed (x -> y arises by placement order, v -> y by adjacency)
        future = adj[v] & ~placed & universe
        if future:
            am = gained & ~adj[v] & ~bit
            while am:
                low = am & -am
                a = low.bit_length()
                am ^= low
                xs = co_reach[a]
                ys = future
                while ys:
                    ylow = ys & -ys
                    ys ^= ylow
                    if adj[ylow.bit_length()] & xs:
                        return False
        return True

    def retract(v: int):
        nonlocal placed
        bit = 1 << (v - 1)
        order.pop()
        placed &= ~bit
        for u in order:
            reach[u] &= ~bit
        reach[v] = 0
        co_reach[v] = 0

    def dfs() -> bool:
        if len(order) == n:
            return True
        for v in range(1, n + 1):
            if placed & (1 << (v - 1)):
                continue
            if not canonical(v):
                continue
            if extend(v):
                if dfs():
                    return True
            retract(v)
        return False

    return order if dfs() else None


def oracle_semi_transitive(
    g: Graph, max_vertices: int = 9, reduce_twins: bool = True
) -> Optional[Orientation]:
    """Exhaustive oracle: a semi-transitive orientation of g, or None.

    Searches vertex orders (every acyclic orientation arises from one), so
    absence is a proof that g is not semi-transitive.  With reduce_twins on,
    twin vertices (N(a)\\{b} == N(b)\\{a}) are removed first and the reduced
    orientation is extended back by giving each removed twin the arcs of its
    keeper; semi-transitivity is preserved both ways, and the extended result
    is re-verified before being returned.  With reduce_twins off the result is
    exactly orient_by_order of the lexicographically first valid permutation.
    """
    n = g.n
    if n > max_vertices:
        raise SizeGuardError(f"n={n} exceeds the oracle guard {max_vertices}")
    if not reduce_twins:
        found = _search_semi_transitive_order(g)
        return orient_by_order(g, found) if found is not None else None

    from .graphs import twin_reduce  # local import: graphs does not need orient

    reduction = twin_reduce(g)
    found = _search_semi_transitive_order(reduction.graph)
    if found is None:
        return None
    back = {new: old for new, old in enumerate(reduction.kept, start=1)}
    arcs = {(back[u], back[v]) for u, v in orient_by_order(reduction.graph, found).arcs}
    direction: dict[int, dict[int, bool]] = {}
    for u, v in arcs:
        direction.setdefault(u, {})[v] = True
        direction.setdefault(v, {})[u] = False
    for keeper, removed in reversed(reduction.removals):
        dirs = dict(direction.get(keeper, {}))
        for x, outward in dirs.items():
            if x == removed:
                continue
            if not g.has_edge(removed, x):
                continue
            arcs.add((removed, x) if outward else (x, removed))
            direction.setdefault(removed, {})[x] = outward
            direction.setdefault(x, {})[removed] = not outward
        if g.has_edge(keeper, removed):
            arcs.add((keeper, removed))
            direction.setdefault(keeper, {})[removed] = True
            direction.setdefault(removed, {})[keeper] = False
    out = Orientation(g, frozenset(arcs))
    if not is_semi_transitive_orientation(out):
        raise AssertionError("twin extension broke semi-transitivity; this is a bug")
    return out


def parse_orientation(text: str) -> Orientation:
    """Parse "n m" followed by m arc lines "u > v"."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ValueError("line 1: empty input")
    parts = lines[0].split()
    if len(parts) != 2:
        raise ValueError("line 1: expected header 'n m'")
    n, m = int(parts[0]), int(parts[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} arcs, found {len(lines) - 1}")
    arcs = set()
    edges = set()
    for idx, ln in enumerate(lines[1:], start=2):
        toks = ln.replace(">", " > ").split()
        if len(toks) != 3 or toks[1] != ">":
            raise ValueError(f"line {idx}: expected 'u > v'")
        u, v = int(toks[0]), int(toks[2])
        if u == v:
            raise ValueError(f"line {idx}: self-loop at {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"line {idx}: vertex out of range 1..{n}")
        e = (min(u, v), max(u, v))
        if e in edges:
            raise ValueError(f"line {idx}: edge {e} oriented twice")
        edges.add(e)
        arcs.add((u, v))
    return Orientation(Graph(n, frozenset(edges)), frozenset(arcs))


def format_orientation(o: Orientation) -> str:
    lines = [f"{o.graph.n} {len(o.arcs)}"]
    lines.extend(f"{u} > {v}" for u, v in sorted(o.arcs))
    return "\n".join(lines) + "\n"

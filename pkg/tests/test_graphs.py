import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from semitrans import (
    Graph,
    GraphFormatError,
    format_graph,
    induced_subgraph,
    neighborhood_matrix,
    normalize_partition,
    parse_graph,
    parse_graph_pinned,
    split_partition,
    twin_reduce,
)
from semitrans.generate import forbidden_configuration, split_graph_from_types

from oracles import bipartition_split_oracle, random_graph
from strategies import graphs, split_partitions


def complete_graph(n):
    return Graph(n, frozenset(combinations(range(1, n + 1), 2)))


def cycle_graph(n):
    edges = {(i, i + 1) for i in range(1, n)} | {(1, n)}
    return Graph(n, frozenset(edges))


# -- parsing ---------------------------------------------------------------

def test_parse_path():
    g = parse_graph("3 2\n1 2\n2 3\n")
    assert g.n == 3 and g.edges == frozenset({(1, 2), (2, 3)})


def test_parse_isolated_vertex():
    g = parse_graph("1 0\n")
    assert g.n == 1 and not g.edges


def test_parse_self_loop_rejected():
    with pytest.raises(GraphFormatError) as exc:
        parse_graph("2 1\n1 1\n")
    assert "self-loop" in str(exc.value) and "line 2" in str(exc.value)


def test_parse_comments_blank_lines_and_pin():
    text = "# comment\n\n4 2\n1 2\n\n3 4\nC: 1 2\n"
    g, pinned = parse_graph_pinned(text)
    assert g.n == 4 and pinned == (1, 2)


@pytest.mark.parametrize("text,fragment", [
    ("", "empty"),
    ("2 1\n2 1\n", "u < v"),
    ("2 1\n1 3\n", "u < v"),
    ("2 2\n1 2\n1 2\n", "duplicate"),
    ("2 x\n", "non-integer"),
    ("3 1\n1 2\n1 3\n", "more than"),
])
def test_parse_errors(text, fragment):
    with pytest.raises((GraphFormatError, ValueError)) as exc:
        parse_graph(text)
    assert fragment in str(exc.value)


def test_format_round_trip():
    g = parse_graph("4 3\n1 2\n2 3\n1 4\n")
    g2, pinned = parse_graph_pinned(format_graph(g, clique=(1, 2)))
    assert g2 == g and pinned == (1, 2)


# -- split partitions ------------------------------------------------------

def test_split_complete_graph():
    p = split_partition(complete_graph(4))
    assert sorted(p.clique) == [1, 2, 3, 4] and p.independent == ()


def test_split_c5_absent():
    g = cycle_graph(5)
    # brute force over all 2^5 bipartitions confirms C5 is not split
    assert bipartition_split_oracle(g) == []
    assert split_partition(g) is None


def test_split_star():
    g = Graph(4, frozenset({(1, 2), (1, 3), (1, 4)}))
    p = split_partition(g)
    assert p is not None
    # brute force agrees something exists, and any valid partition here has
    # the center plus one leaf as the clique
    assert bipartition_split_oracle(g)
    assert 1 in p.clique and len(p.clique) == 2 and len(p.independent) == 2


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=7))
def test_split_partition_matches_bipartition_oracle(g):
    p = split_partition(g)
    assert (p is not None) == bool(bipartition_split_oracle(g))


@settings(max_examples=150, deadline=None)
@given(split_partitions())
def test_split_partition_finds_valid_partition_on_split_graphs(p):
    regained = split_partition(p.graph)
    assert regained is not None  # construction already validated invariants


# -- normalization ---------------------------------------------------------

def test_normalize_moves_dominating_vertex():
    g = Graph(3, frozenset({(1, 2), (1, 3), (2, 3)}))
    p = normalize_partition(g, [1, 2], [3])
    assert sorted(p.clique) == [1, 2, 3] and p.independent == ()


def test_normalize_fixpoint():
    g = Graph(3, frozenset({(1, 2), (2, 3)}))
    p = normalize_partition(g, [1, 2], [3])
    assert sorted(p.clique) == [1, 2] and p.independent == (3,)


def test_normalize_two_candidates_moves_smallest_only():
    # vertices 3 and 4 both adjacent to all of C = {1, 2}; they are not
    # adjacent to each other, so moving 3 disqualifies 4
    g = Graph(4, frozenset({(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)}))
    p = normalize_partition(g, [1, 2], [3, 4])
    assert sorted(p.clique) == [1, 2, 3] and p.independent == (4,)


def test_normalize_rejects_invalid_input():
    g = Graph(3, frozenset({(1, 2)}))
    with pytest.raises(ValueError):
        normalize_partition(g, [1, 3], [2])  # 1-3 not an edge


# -- twin reduction --------------------------------------------------------

def test_twin_reduce_triangle():
    red = twin_reduce(complete_graph(3))
    assert red.graph.n == 1 and len(red.removals) == 2


def test_twin_reduce_two_isolated():
    red = twin_reduce(Graph(2, frozenset()))
    assert red.graph.n == 1 and red.removals == ((1, 2),)


def test_twin_reduce_forbidden_configuration_unchanged():
    g = forbidden_configuration("a").graph
    # derived: no pair satisfies the twin condition
    for a, b in combinations(g.vertices(), 2):
        assert g.neighbors(a) - {b} != g.neighbors(b) - {a}
    red = twin_reduce(g)
    assert red.graph.n == g.n and red.removals == ()


def test_twin_reduce_confluent_final_size():
    rng = random.Random(42)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 8), rng.choice([0.3, 0.5, 0.7]))
        baseline = twin_reduce(g).graph.n
        # randomized removal order: repeatedly delete a random twin
        live = sorted(g.vertices())
        neigh = {v: set(g.neighbors(v)) for v in live}
        while True:
            pairs = [
                (a, b)
                for a, b in combinations(live, 2)
                if neigh[a] - {b} == neigh[b] - {a}
            ]
            if not pairs:
                break
            a, b = rng.choice(pairs)
            drop = rng.choice([a, b])
            live.remove(drop)
            for v in neigh[drop]:
                neigh[v].discard(drop)
            del neigh[drop]
        assert len(live) == baseline


# -- induced subgraphs -----------------------------------------------------

def test_induced_full_set_is_copy():
    g = Graph(4, frozenset({(1, 2), (3, 4)}))
    sub, mapping = induced_subgraph(g, [1, 2, 3, 4])
    assert sub == g and mapping == {1: 1, 2: 2, 3: 3, 4: 4}


def test_induced_pair_of_k4():
    sub, _ = induced_subgraph(complete_graph(4), [2, 4])
    assert sub.n == 2 and sub.edges == frozenset({(1, 2)})


def test_induced_deletion_filters_edges():
    g = forbidden_configuration("b").graph
    keep = [v for v in g.vertices() if v != 4]
    sub, mapping = induced_subgraph(g, keep)
    back = {new: old for new, old in mapping.items()}
    expected = {(u, v) for u, v in g.edges if 4 not in (u, v)}
    got = {tuple(sorted((mapping[u], mapping[v]))) for u, v in sub.edges}
    assert got == expected and sub.n == 6


def test_induced_rejects_foreign_vertex():
    with pytest.raises(ValueError):
        induced_subgraph(complete_graph(3), [1, 5])


# -- neighborhood matrix ---------------------------------------------------

def test_neighborhood_matrix_interval_system():
    p = split_graph_from_types([{1}, {1, 2}, {2, 3}, {3}], 3)
    m = neighborhood_matrix(p)
    assert m.m == 4 and m.n == 3
    assert m.column_ones(1) == {1, 2}
    assert m.column_ones(2) == {2, 3}
    assert m.column_ones(3) == {3, 4}
    assert m.labels == p.independent


def test_neighborhood_matrix_empty_independent():
    p = split_graph_from_types([set(), set()], 0)
    m = neighborhood_matrix(p)
    assert (m.m, m.n) == (2, 0)


def test_neighborhood_matrix_singleton_types():
    # clique types {a}, {b}, {c}, {a,b,c}: columns (1001), (0101), (0011)
    p = forbidden_configuration("c")
    m = neighborhood_matrix(p)
    assert m.column_ones(1) == {1, 4}
    assert m.column_ones(2) == {2, 4}
    assert m.column_ones(3) == {3, 4}

import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from hoffsign.hoffman import b_matrix
from hoffsign.lines import (
    Multigraph,
    format_mg,
    hoffmanize,
    line_dagger,
    line_graph_double_edge,
    line_graph_unsigned,
    line_signed_graph,
    max_clique_of_edge,
    multigraph_isomorphic,
    parse_mg,
    read_mg,
    signed_incidence,
    write_mg,
)
from hoffsign.sigraph import FormatError, SignedGraph, induced_subgraph, switch, switching_equivalent
from hoffsign.spectra import AlgebraicThreshold, Cmp, lambda_min_cmp

from conftest import graph_and_subset, signed_graphs

C4 = Multigraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
SQRT2 = AlgebraicThreshold.sqrt(2, -1)


def test_multigraph_shapes():
    assert Multigraph(3, [(0, 1), (1, 2)]).shape() == "tree"
    assert Multigraph(3, [(0, 1), (1, 2), (0, 2)]).shape() == "odd_unicyclic"
    assert C4.shape() == "even_unicyclic"
    assert Multigraph(2, [(0, 1), (0, 1)]).shape() == "double_edge_tree"
    assert Multigraph(4, [(0, 1), (2, 3)]).shape() == "other"
    with pytest.raises(ValueError):
        Multigraph(2, [(0, 1), (0, 1), (0, 1)])
    with pytest.raises(ValueError):
        Multigraph(2, [(1, 1)])


def test_line_signed_graph_examples():
    assert line_signed_graph(SignedGraph.from_edges(2, [], [(0, 1)])) == SignedGraph(1, frozenset(), frozenset())
    L = line_signed_graph(SignedGraph.from_signed_edges(3, [(0, 1, 1), (1, 2, -1)]))
    assert L.adjacency_matrix().tolist() == [[0, -1], [-1, 0]]
    star = SignedGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert line_signed_graph(star) == SignedGraph.complete(3)


@given(signed_graphs(max_n=6))
def test_line_graph_is_gram_minus_2(S):
    L = line_signed_graph(S)
    B = signed_incidence(S)
    assert np.array_equal(L.adjacency_matrix(), B.T @ B - 2 * np.eye(S.num_edges, dtype=np.int64))
    assert all((np.count_nonzero(B[:, k]) == 2) for k in range(S.num_edges))
    if S.num_edges:
        assert lambda_min_cmp(L, -2) is not Cmp.LESS


@given(graph_and_subset(max_n=6))
def test_switching_functoriality(arg):
    S, W = arg
    for i in W:
        star = {k for k, (u, v, _) in enumerate(S.edges()) if i in (u, v)}
        assert line_signed_graph(switch(S, {i})) == switch(line_signed_graph(S), star)


def test_unsigned_line_graph_examples():
    assert line_graph_unsigned(Multigraph(3, [(0, 1), (1, 2)])) == SignedGraph.complete(2)
    assert line_graph_unsigned(Multigraph(4, [(0, 1), (0, 2), (0, 3)])) == SignedGraph.complete(3)
    C5 = Multigraph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert switching_equivalent(line_graph_unsigned(C5), SignedGraph.cycle(5)) is not None
    with pytest.raises(ValueError):
        line_graph_unsigned(Multigraph(2, [(0, 1), (0, 1)]))


def test_unsigned_line_graph_matches_networkx():
    for G in nx.graph_atlas_g()[1:60]:
        H = Multigraph.from_networkx(G)
        ref = nx.line_graph(G)
        assert line_graph_unsigned(H).num_edges == ref.number_of_edges()


def test_dagger_on_c4():
    L = line_dagger(C4, 0, 1)
    assert len(L.neg_edges) == 1
    assert lambda_min_cmp(L, SQRT2) is Cmp.EQUAL
    assert switching_equivalent(L, SignedGraph.cycle(4, negative=[3])) is not None


def test_dagger_choices_are_switching_equivalent():
    H = Multigraph(6, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5)])
    cyc = H.cycle_edges()
    outs = []
    for i, j in itertools.permutations(cyc, 2):
        if len(set(H.edges[i]) & set(H.edges[j])) == 1:
            outs.append(line_dagger(H, i, j))
    assert len(outs) == 8
    for L in outs[1:]:
        assert switching_equivalent(outs[0], L) is not None
    assert lambda_min_cmp(outs[0], -2) is Cmp.GREATER
    assert lambda_min_cmp(line_graph_unsigned(H), -2) is Cmp.EQUAL


def test_dagger_with_pendant_edge():
    H = Multigraph(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)])
    L = line_dagger(H, 0, 1)
    assert L.n == 5
    assert lambda_min_cmp(L, -2) is Cmp.GREATER


def test_dagger_errors():
    with pytest.raises(ValueError):
        line_dagger(Multigraph(3, [(0, 1), (1, 2), (0, 2)]), 0, 1)
    with pytest.raises(ValueError):
        line_dagger(C4, 0, 0)
    with pytest.raises(ValueError):
        line_dagger(Multigraph(3, [(0, 1), (1, 2)]), 0, 1)
    with pytest.raises(ValueError):
        line_dagger(C4, 0, 3)  # (0, 1) and (2, 3) do not meet


def test_double_edge_line_graph():
    H = Multigraph(3, [(0, 1), (1, 2), (1, 2)])
    L = line_graph_double_edge(H)
    assert L.n == 3
    assert lambda_min_cmp(L, -2) is Cmp.GREATER
    other = line_graph_double_edge(H, plus_side=2)
    assert switching_equivalent(L, other) is not None
    bare = line_graph_double_edge(Multigraph(2, [(0, 1), (0, 1)]))
    assert bare.n == 2 and bare.num_edges == 0
    with pytest.raises(ValueError):
        line_graph_double_edge(C4)
    with pytest.raises(ValueError):
        line_graph_double_edge(H, plus_side=0)


def test_max_clique_of_edge():
    G = line_graph_unsigned(Multigraph(5, [(0, 1), (0, 2), (0, 3), (3, 4)]))
    assert max_clique_of_edge(G, (0, 1)) == frozenset({0, 1, 2})
    assert max_clique_of_edge(line_graph_unsigned(C4), (0, 1)) == frozenset({0, 1})
    with pytest.raises(ValueError):
        max_clique_of_edge(G, (0, 3))


@given(signed_graphs(max_n=6))
def test_hoffmanize_slim_graph_is_line_graph(S):
    if S.num_edges == 0:
        return
    h = hoffmanize(S)
    assert induced_subgraph(h.graph, range(S.num_edges)) == line_signed_graph(S)
    # each slim vertex carries the two endpoint signs, so B(h) = -2I
    assert (b_matrix(h) == -2 * np.eye(S.num_edges, dtype=int)).all()


def test_multigraph_isomorphism():
    A = Multigraph(3, [(0, 1), (1, 2), (1, 2)])
    B = Multigraph(3, [(0, 1), (0, 1), (1, 2)])
    C = Multigraph(3, [(0, 1), (0, 1), (0, 2)])
    assert multigraph_isomorphic(A, B)
    assert multigraph_isomorphic(A, C)
    assert not multigraph_isomorphic(A, Multigraph(3, [(0, 1), (1, 2), (0, 2)]))


def test_mg_round_trip(tmp_path):
    for H in (C4, Multigraph(3, [(0, 1), (1, 2), (1, 2)]), Multigraph(1, [])):
        assert parse_mg(format_mg(H)) == H
        write_mg(H, tmp_path / "h.mg")
        assert read_mg(tmp_path / "h.mg") == H
    with pytest.raises(FormatError):
        parse_mg("mg 2\n0 1\n0 1\n0 1\n")
    with pytest.raises(FormatError):
        parse_mg("mg 2\n0 1 +\n")

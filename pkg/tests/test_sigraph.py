import numpy as np
import pytest
from hypothesis import given, strategies as st

from hoffsign.sigraph import (
    FormatError,
    SignedGraph,
    SwitchWitness,
    _bfs_forest,
    canonical_switch_form,
    canonical_switching_set,
    components,
    delete_vertex,
    disjoint_union,
    format_sg,
    induced_subgraph,
    is_connected,
    min_degree,
    negative,
    parse_sg,
    read_sg,
    relabel,
    switch,
    switching_equivalent,
    underlying,
    write_sg,
)

from conftest import graph_and_perm, graph_and_subset, random_signed, signed_graphs
from oracles import brute_switching_equivalent


def test_basic_constructors():
    S = SignedGraph.cycle(4, negative=[3])
    assert S.n == 4 and S.num_edges == 4
    assert S.sign(0, 3) == -1 and S.sign(3, 0) == -1 and S.sign(0, 2) == 0
    A = S.adjacency_matrix()
    assert (A == A.T).all() and A.sum() == 4
    assert SignedGraph.complete(4, -1).num_edges == 6
    assert SignedGraph.path(3).edges() == [(0, 1, 1), (1, 2, 1)]


def test_constructor_errors():
    with pytest.raises(ValueError):
        SignedGraph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        SignedGraph.from_edges(3, [(0, 1)], [(1, 0)])
    with pytest.raises(ValueError):
        SignedGraph.from_edges(2, [(0, 5)])


def test_from_matrix_round_trip(rng):
    for n in range(1, 7):
        S = random_signed(rng, n)
        assert SignedGraph.from_matrix(S.adjacency_matrix()) == S


def test_switch_examples():
    S = SignedGraph.path(3)
    T = switch(S, {1})
    assert T.edges() == [(0, 1, -1), (1, 2, -1)]
    with pytest.raises(ValueError):
        switch(S, {7})


@given(graph_and_subset())
def test_switch_is_involution_and_conjugation(arg):
    S, W = arg
    T = switch(S, W)
    assert switch(T, W) == S
    d = np.array([-1 if v in W else 1 for v in range(S.n)])
    assert (T.adjacency_matrix() == d[:, None] * S.adjacency_matrix() * d[None, :]).all()
    assert underlying(T) == underlying(S)


@given(graph_and_subset())
def test_canonical_form_is_class_function(arg):
    S, W = arg
    C = canonical_switch_form(S)
    assert canonical_switch_form(switch(S, W)) == C
    assert switch(S, canonical_switching_set(S)) == C
    assert canonical_switch_form(C) == C


def subsets(n):
    return st.sets(st.integers(0, n - 1)) if n else st.just(set())


@given(signed_graphs())
def test_canonical_form_positive_on_bfs_forest(S):
    C = canonical_switch_form(S)
    for parent, v in _bfs_forest(C):
        if parent is not None:
            assert C.sign(parent, v) == 1


@given(signed_graphs(max_n=6))
def test_balanced_iff_canonical_form_positive(S):
    balanced = switching_equivalent(S, underlying(S)) is not None
    assert balanced == (not canonical_switch_form(S).neg_edges)


def test_balanced_cycle_switches_positive():
    S = SignedGraph.cycle(6, negative=[0, 3])
    assert canonical_switch_form(S) == SignedGraph.cycle(6)
    assert canonical_switch_form(SignedGraph.cycle(5, negative=[2])).num_edges == 5


@given(graph_and_perm(), st.data())
def test_switching_equivalent_finds_witness(arg, data):
    S, perm = arg
    W = data.draw(subsets(S.n))
    T = relabel(switch(S, W), perm)
    w = switching_equivalent(S, T)
    assert w is not None and w.apply(S) == T
    assert w.inverse().apply(T) == S


@given(signed_graphs(max_n=5), signed_graphs(max_n=5))
def test_switching_equivalent_matches_brute_force(S, T):
    w = switching_equivalent(S, T)
    assert (w is not None) == brute_switching_equivalent(S, T)
    if w is not None:
        assert w.apply(S) == T


@given(graph_and_perm(max_n=6), st.data())
def test_witness_composition(arg, data):
    S, perm = arg
    n = S.n
    W1 = frozenset(data.draw(subsets(n)))
    W2 = frozenset(data.draw(subsets(n)))
    perm2 = data.draw(st.permutations(range(n)))
    a = SwitchWitness(W1, tuple(perm))
    b = SwitchWitness(W2, tuple(perm2))
    assert a.then(b).apply(S) == b.apply(a.apply(S))
    assert a.then(a.inverse()).apply(S) == S


def test_equivalence_is_transitive_on_samples(rng):
    for _ in range(20):
        S = random_signed(rng, 5)
        W1 = {v for v in range(5) if rng.random() < 0.5}
        T = relabel(switch(S, W1), list(rng.permutation(5)))
        U = relabel(switch(T, {0, 2}), list(rng.permutation(5)))
        ab, bc = switching_equivalent(S, T), switching_equivalent(T, U)
        assert ab.then(bc).apply(S) == U


def test_inequivalent_examples():
    assert switching_equivalent(SignedGraph.cycle(5), SignedGraph.cycle(5, negative=[0])) is None
    assert switching_equivalent(SignedGraph.complete(4), SignedGraph.complete(4, -1)) is None
    assert switching_equivalent(SignedGraph.path(3), SignedGraph.complete(3)) is None


def test_structural_helpers():
    S = disjoint_union(SignedGraph.path(2), SignedGraph.cycle(3, negative=[1]))
    assert S.n == 5 and not is_connected(S)
    assert components(S) == [[0, 1], [2, 3, 4]]
    assert min_degree(S) == 1
    sub = induced_subgraph(S, [2, 3, 4])
    assert sub == SignedGraph.cycle(3, negative=[1])
    assert delete_vertex(sub, 0).num_edges == 1
    assert negative(negative(S)) == S


def test_sg_round_trip(tmp_path, rng):
    for n in range(0, 7):
        S = random_signed(rng, n)
        assert parse_sg(format_sg(S)) == S
        write_sg(S, tmp_path / "g.sg")
        assert read_sg(tmp_path / "g.sg") == S


def test_sg_comments_and_blank_lines():
    text = "sg 3\n\n0 1 +\n1 2 -\n"
    assert parse_sg(text) == SignedGraph.from_signed_edges(3, [(0, 1, 1), (1, 2, -1)])


@pytest.mark.parametrize(
    "text",
    [
        "",
        "sg\n",
        "sg x\n",
        "g 2\n0 1 +\n",
        "sg 2\n0 1\n",
        "sg 2\n0 2 +\n",
        "sg 2\n0 0 +\n",
        "sg 2\n0 1 *\n",
        "sg 2\n0 1 +\n1 0 -\n",
    ],
)
def test_sg_rejects_malformed(text):
    with pytest.raises(FormatError):
        parse_sg(text)


@given(signed_graphs(max_n=5), signed_graphs(max_n=5))
def test_class_label_is_complete_invariant(S, T):
    from hoffsign.sigraph import switching_class_label

    assert (switching_class_label(S) == switching_class_label(T)) == brute_switching_equivalent(S, T)


@given(graph_and_perm(max_n=6), st.data())
def test_class_label_is_invariant(arg, data):
    from hoffsign.sigraph import switching_class_label

    S, perm = arg
    W = data.draw(subsets(S.n))
    assert switching_class_label(relabel(switch(S, W), perm)) == switching_class_label(S)

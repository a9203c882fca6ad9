import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hoffsign.hoffman import (
    CATALOG,
    HoffmanSGraph,
    b_matrix,
    catalog_class,
    direct_sum_check,
    finest_decomposition,
    format_hsg,
    h3_elimination,
    hoffman_eigen_min,
    hoffman_switching_isomorphic,
    is_H_line,
    parse_hsg,
    read_hsg,
    slim_switch,
    verify_decomposition,
    write_hsg,
)
from hoffsign.sigraph import FormatError, SignedGraph, induced_subgraph, switching_equivalent
from hoffsign.spectra import Cmp, char_poly
from hoffsign.verify import random_glued


@pytest.mark.parametrize(
    "name, expected",
    [
        ("h2", [[-2]]),
        ("h2-", [[-2]]),
        ("h2--", [[-2]]),
        ("h3", [[-1, -1], [-1, -1]]),
        ("h4", [[-1, 1], [1, -1]]),
    ],
)
def test_b_matrix_by_hand(name, expected):
    # B = A_slim - C C^T computed by hand
    assert b_matrix(CATALOG[name]).tolist() == expected
    assert hoffman_eigen_min(CATALOG[name], -2) is Cmp.EQUAL


def test_labels_validated():
    with pytest.raises(ValueError):
        HoffmanSGraph.build("sff", pos=[(1, 2), (0, 1)])  # adjacent fats
    with pytest.raises(ValueError):
        HoffmanSGraph.build("sf")  # fat without slim neighbour
    with pytest.raises(ValueError):
        HoffmanSGraph.build("sx", pos=[(0, 1)])


def test_representing_vectors_and_slim_graph():
    h = CATALOG["h2-"]
    assert h.slim == [0] and h.fat == [1, 2]
    assert h.representing_vector(0).tolist() == [1, -1]
    assert CATALOG["h4"].slim_subgraph() == SignedGraph.path(2)


def test_slim_switching():
    assert hoffman_switching_isomorphic(slim_switch(CATALOG["h2"], {0}), CATALOG["h2--"])
    assert slim_switch(CATALOG["h2"], {0}) == CATALOG["h2--"]
    with pytest.raises(ValueError):
        slim_switch(CATALOG["h2"], {1})
    assert catalog_class(CATALOG["h2--"]) == "h2"
    assert catalog_class(CATALOG["h2-"]) == "h2-"
    assert not hoffman_switching_isomorphic(CATALOG["h2"], CATALOG["h2-"])


@given(st.sampled_from(sorted(CATALOG)), st.data())
def test_slim_switch_preserves_b_spectrum(name, data):
    h = CATALOG[name]
    W = data.draw(st.sets(st.sampled_from(h.slim)))
    assert char_poly(b_matrix(slim_switch(h, W))) == char_poly(b_matrix(h))


def test_decomposition_conditions():
    h4 = CATALOG["h4"]
    assert verify_decomposition(h4, [range(4)])
    # splitting h4 breaks the inner-product condition on the slim edge
    check = verify_decomposition(h4, [{0, 2}, {1, 3}])
    assert not check and check.condition == "iv" and check.witness == (0, 1)
    assert verify_decomposition(h4, [{0, 2}]).condition == "i"
    assert verify_decomposition(h4, [{0, 1, 2, 3}, {0, 2}]).condition == "ii"
    assert verify_decomposition(h4, [{0, 2, 3}, {1, 3}]).condition == "part"
    g = HoffmanSGraph.build("ssff", pos=[(0, 2), (0, 3), (1, 3)])
    check = verify_decomposition(g, [{0, 2}, {1, 3}])
    assert check.condition == "iii" and check.witness == (0, 3)
    assert verify_decomposition(h4, [set()]).condition == "part"
    assert len(finest_decomposition(h4)) == 1


def test_two_h2_parts_sharing_a_fat():
    # slims 0,1 with fats 2,3,4: 0~{2,3}, 1~{3,4}; inner product 1 so edge 0-1 positive
    h = HoffmanSGraph.build("ssfff", pos=[(0, 1), (0, 2), (0, 3), (1, 3), (1, 4)])
    dec = finest_decomposition(h)
    assert sorted(map(sorted, dec.parts)) == [[0, 2, 3], [1, 3, 4]]
    assert verify_decomposition(h, dec.parts)
    assert direct_sum_check(h, dec.parts)


@pytest.mark.parametrize("seed", range(25))
def test_glued_graphs_decompose(seed):
    rng = random.Random(seed)
    got = None
    while got is None:  # rejected when some inner product leaves {-1, 0, 1}
        got = random_glued(rng, parts=3, pool=5)
    h, parts = got
    assert verify_decomposition(h, parts)
    assert direct_sum_check(h, parts)
    dec = finest_decomposition(h)
    assert verify_decomposition(h, dec.parts)
    assert len(dec) >= len(parts)


def test_h_line_examples():
    cert = is_H_line(SignedGraph.path(3), ["h2"])
    assert cert is not None
    sub = induced_subgraph(cert.supergraph.graph, range(3))
    assert sub == SignedGraph.path(3)
    assert verify_decomposition(cert.supergraph, cert.decomposition.parts)
    assert set(cert.classes) <= {"h2"}
    assert is_H_line(SignedGraph.complete(3, -1), ["h2", "h3"]) is None
    assert is_H_line(SignedGraph.cycle(5), ["h2-", "h3"]) is None


def test_h_line_certificate_vectors_give_gram():
    S = SignedGraph.cycle(4, negative=[3])
    cert = is_H_line(S, ["h2", "h2-"])
    assert cert is not None
    # with only h2-type parts every slim vertex is its own part
    assert set(cert.classes) <= {"h2", "h2-"}
    coords = sorted({c for v in cert.vectors for c, _ in v})
    V = np.zeros((4, len(coords)), dtype=int)
    for i, v in enumerate(cert.vectors):
        for c, sgn in v:
            V[i, coords.index(c)] = sgn
    assert (V @ V.T - 2 * np.eye(4, dtype=int) == S.adjacency_matrix()).all()


def test_h3_elimination():
    h = CATALOG["h3"]
    new, dec = h3_elimination(h, [range(3)])
    assert verify_decomposition(new, dec.parts)
    assert sorted(catalog_class(p) for p in dec.subgraphs(new)) == ["h2", "h2-"]
    assert switching_equivalent(new.slim_subgraph(), h.slim_subgraph()) is not None
    with pytest.raises(ValueError):
        h3_elimination(CATALOG["h4"], [range(4)])


def test_hsg_round_trip(tmp_path):
    for name, h in CATALOG.items():
        assert parse_hsg(format_hsg(h)) == h
        write_hsg(h, tmp_path / f"{name}.hsg")
        assert read_hsg(tmp_path / f"{name}.hsg") == h


@pytest.mark.parametrize(
    "text",
    [
        "hsg 2\n",
        "hsg 2\nlabels s\n0 1 +\n",
        "hsg 2\nlabels s q\n0 1 +\n",
        "hsg 2\nlabels f f\n0 1 +\n",
        "sg 2\nlabels s f\n0 1 +\n",
    ],
)
def test_hsg_rejects_malformed(text):
    with pytest.raises(FormatError):
        parse_hsg(text)

"""Line signed graphs, line graphs of trees/unicyclic graphs and the double-edge variant."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Optional

import networkx as nx
import numpy as np

from .hoffman import HoffmanSGraph, SLIM, FAT
from .sigraph import (
    FormatError,
    SignedGraph,
    _content_lines,
    _pair,
    _parse_edge_lines,
    _parse_header,
    adjacency_matrix,
    induced_subgraph,
)

__all__ = [
    "Multigraph",
    "format_mg",
    "hoffmanize",
    "line_dagger",
    "line_graph_double_edge",
    "line_graph_unsigned",
    "line_signed_graph",
    "max_clique_of_edge",
    "parse_mg",
    "read_mg",
    "signed_incidence",
    "write_mg",
]


@dataclass(frozen=True)
class Multigraph:
    """Loopless multigraph on ``0..n-1`` with at most one pair doubled.

    ``edges`` is kept sorted, so the two copies of a double edge are adjacent
    in the list; the first copy plays the role of u and the second of u'.
    """

    n: int
    edges: tuple

    def __post_init__(self):
        edges = tuple(sorted(_pair(*e) for e in self.edges))
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            if u < 0 or v >= self.n:
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
        counts = Counter(edges)
        multi = [e for e, c in counts.items() if c > 1]
        if len(multi) > 1 or any(c > 2 for c in counts.values()):
            raise ValueError("at most one pair may be doubled, and only twice")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_networkx(cls, G) -> "Multigraph":
        nodes = sorted(G.nodes())
        idx = {v: i for i, v in enumerate(nodes)}
        return cls(len(nodes), tuple((idx[u], idx[v]) for u, v in G.edges()))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def double_edge(self) -> Optional[tuple[int, int]]:
        for e, c in Counter(self.edges).items():
            if c == 2:
                return e
        return None

    @property
    def is_simple(self) -> bool:
        return self.double_edge is None

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for u, w in self.edges)

    def to_networkx(self) -> nx.MultiGraph:
        G = nx.MultiGraph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges)
        return G

    def simple_graph(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges)
        return G

    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_connected(self.simple_graph())

    def without_edge(self, index: int) -> "Multigraph":
        return Multigraph(self.n, self.edges[:index] + self.edges[index + 1:])

    def cycle_edges(self) -> list[int]:
        """Indices of edges on the unique cycle of a connected simple unicyclic graph."""
        G = self.simple_graph()
        cyc = nx.cycle_basis(G)
        if len(cyc) != 1 or not self.is_simple:
            raise ValueError("graph is not simple unicyclic")
        verts = cyc[0]
        ring = {_pair(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))}
        return [i for i, e in enumerate(self.edges) if e in ring]

    def shape(self) -> str:
        """'tree', 'odd_unicyclic', 'even_unicyclic', 'double_edge_tree' or 'other'."""
        if not self.is_connected():
            return "other"
        if self.double_edge is not None:
            return "double_edge_tree" if self.m == self.n else "other"
        if self.m == self.n - 1:
            return "tree"
        if self.m == self.n:
            return "odd_unicyclic" if len(self.cycle_edges()) % 2 else "even_unicyclic"
        return "other"


def multigraph_isomorphic(H1: Multigraph, H2: Multigraph) -> bool:
    """Isomorphism of multigraphs with edge multiplicities respected."""
    if H1.n != H2.n or H1.m != H2.m:
        return False

    def weighted(H):
        G = nx.Graph()
        G.add_nodes_from(range(H.n))
        for e, c in Counter(H.edges).items():
            G.add_edge(*e, mult=c)
        return G

    return nx.is_isomorphic(
        weighted(H1), weighted(H2), edge_match=lambda a, b: a["mult"] == b["mult"]
    )


def signed_incidence(S: SignedGraph) -> np.ndarray:
    """Vertices x edges matrix; column e carries the sign of e at both endpoints."""
    edges = S.edges()
    B = np.zeros((S.n, len(edges)), dtype=np.int64)
    for k, (u, v, s) in enumerate(edges):
        B[u, k] = B[v, k] = s
    return B


def line_signed_graph(S: SignedGraph) -> SignedGraph:
    """Vertices are the edges of S (sorted order); incident edges are joined with
    the product of their signs.  Checked against B^T B - 2I."""
    edges = S.edges()
    pos, neg = [], []
    for i, j in itertools.combinations(range(len(edges)), 2):
        (a, b, s), (c, d, t) = edges[i], edges[j]
        if len({a, b} & {c, d}) == 1:
            (pos if s * t > 0 else neg).append((i, j))
    L = SignedGraph.from_edges(len(edges), pos, neg)
    B = signed_incidence(S)
    assert np.array_equal(adjacency_matrix(L), B.T @ B - 2 * np.eye(len(edges), dtype=np.int64))
    return L


def line_graph_unsigned(H: Multigraph) -> SignedGraph:
    """Ordinary line graph of a simple graph, all edges positive."""
    if not H.is_simple:
        raise ValueError("graph has a double edge; use line_graph_double_edge")
    pos = [
        (i, j)
        for i, j in itertools.combinations(range(H.m), 2)
        if len(set(H.edges[i]) & set(H.edges[j])) == 1
    ]
    return SignedGraph.from_edges(H.m, pos)


def max_clique_of_edge(G: SignedGraph, e: tuple[int, int]) -> frozenset:
    """The unique maximal clique of the underlying graph of G containing edge e."""
    a, b = e
    if G.sign(a, b) == 0:
        raise ValueError(f"{e} is not an edge")
    common = set(G.neighbors(a)) & set(G.neighbors(b))
    for x, y in itertools.combinations(common, 2):
        if G.sign(x, y) == 0:
            raise ValueError(f"edge {e} lies in more than one maximal clique")
    return frozenset({a, b} | common)


def _shared_vertex(H: Multigraph, i: int, j: int) -> int:
    common = set(H.edges[i]) & set(H.edges[j])
    if len(common) != 1:
        raise ValueError(f"edges {i} and {j} do not meet in exactly one vertex")
    return common.pop()


def line_dagger(H: Multigraph, u: int, u_prime: int) -> SignedGraph:
    """L(H) with the edges from u into the maximal clique of uu' made negative.

    H must be simple unicyclic with cycle length at least 4; u and u' are
    indices of two incident cycle edges of H.
    """
    if H.shape() not in ("odd_unicyclic", "even_unicyclic"):
        raise ValueError("H must be a connected simple unicyclic graph")
    cyc = H.cycle_edges()
    if len(cyc) < 4:
        raise ValueError("the cycle must have at least 4 vertices")
    if u not in cyc or u_prime not in cyc or u == u_prime:
        raise ValueError("u and u' must be distinct cycle edges")
    _shared_vertex(H, u, u_prime)
    L = line_graph_unsigned(H)
    clique = max_clique_of_edge(L, (u, u_prime))
    neg = {_pair(u, v) for v in clique if v != u}
    return SignedGraph.from_edges(L.n, L.pos_edges - neg, neg)


def line_graph_double_edge(H: Multigraph, plus_side: Optional[int] = None) -> SignedGraph:
    """Line signed graph of a tree with one doubled edge {a, b}.

    The second copy u' of the double edge is joined by (+)-edges to the edges
    at ``plus_side`` (default: the smaller of a, b) and by (-)-edges to the
    edges at the other end.  u' is not adjacent to the first copy u.  When u
    has no other neighbours the two copies are isolated vertices, matching
    the orthogonal vectors e_a + e_b and e_a - e_b.
    """
    de = H.double_edge
    if de is None or H.shape() != "double_edge_tree":
        raise ValueError("H must be a tree with exactly one doubled edge")
    a, b = de
    if plus_side is None:
        plus_side = a
    if plus_side not in de:
        raise ValueError("plus_side must be an endpoint of the double edge")
    iu = H.edges.index(de)
    iu2 = iu + 1
    pos, neg = set(), set()
    for i, j in itertools.combinations(range(H.m), 2):
        if iu2 in (i, j):
            continue
        if len(set(H.edges[i]) & set(H.edges[j])) == 1:
            pos.add((i, j))
    for k, e in enumerate(H.edges):
        if k in (iu, iu2):
            continue
        if plus_side in e:
            pos.add(_pair(iu2, k))
        elif (a if plus_side == b else b) in e:
            neg.add(_pair(iu2, k))
    return SignedGraph.from_edges(H.m, pos, neg)


def hoffmanize(S: SignedGraph) -> HoffmanSGraph:
    """Hoffman graph with the edges of S as slim vertices and its vertices as fat ones.

    Slim vertices come first (sorted edge order), then one fat vertex per
    non-isolated vertex of S.  Isolated vertices are dropped since a fat
    vertex needs a slim neighbour.
    """
    edges = S.edges()
    m = len(edges)
    used = sorted({x for u, v, _ in edges for x in (u, v)})
    fat_index = {v: m + i for i, v in enumerate(used)}
    L = line_signed_graph(S)
    pos, neg = set(L.pos_edges), set(L.neg_edges)
    for k, (u, v, s) in enumerate(edges):
        for x in (u, v):
            (pos if s > 0 else neg).add((k, fat_index[x]))
    h = HoffmanSGraph(
        SignedGraph.from_edges(m + len(used), pos, neg), (SLIM,) * m + (FAT,) * len(used)
    )
    if m:
        assert induced_subgraph(h.graph, range(m)) == L
    return h


# ---------------------------------------------------------------------------
# .mg text format

def format_mg(H: Multigraph) -> str:
    return "\n".join([f"mg {H.n}"] + [f"{u} {v}" for u, v in H.edges]) + "\n"


def parse_mg(text: str) -> Multigraph:
    lines = _content_lines(text)
    n = _parse_header(lines, "mg")
    try:
        return Multigraph(n, tuple(_parse_edge_lines(lines[1:], n, signed=False)))
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc


def read_mg(path) -> Multigraph:
    return parse_mg(Path(path).read_text())


def write_mg(H: Multigraph, path) -> None:
    Path(path).write_text(format_mg(H))

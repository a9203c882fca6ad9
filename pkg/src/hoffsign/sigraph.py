"""Signed graphs, switching, canonical switching forms and the ``.sg`` format."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

__all__ = [
    "FormatError",
    "SignedGraph",
    "SwitchWitness",
    "adjacency_matrix",
    "canonical_switch_form",
    "canonical_switching_set",
    "components",
    "disjoint_union",
    "format_sg",
    "induced_subgraph",
    "is_connected",
    "min_degree",
    "negative",
    "parse_sg",
    "read_sg",
    "relabel",
    "switch",
    "switching_class_label",
    "switching_equivalent",
    "switching_witness_for_bijection",
    "underlying",
    "write_sg",
]


class FormatError(ValueError):
    """Malformed graph text file."""


def _pair(u: int, v: int) -> tuple[int, int]:
    u, v = int(u), int(v)
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SignedGraph:
    """A signed graph on vertices ``0..n-1`` with disjoint positive/negative edges."""

    n: int
    pos_edges: frozenset = frozenset()
    neg_edges: frozenset = frozenset()

    def __post_init__(self):
        pos = frozenset(_pair(*e) for e in self.pos_edges)
        neg = frozenset(_pair(*e) for e in self.neg_edges)
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for u, v in pos | neg:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u < 0 or v >= self.n:
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
        if pos & neg:
            raise ValueError(f"edges both positive and negative: {sorted(pos & neg)}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "pos_edges", pos)
        object.__setattr__(self, "neg_edges", neg)

    @classmethod
    def from_edges(cls, n: int, pos: Iterable = (), neg: Iterable = ()) -> "SignedGraph":
        return cls(n, frozenset(pos), frozenset(neg))

    @classmethod
    def from_signed_edges(cls, n: int, edges: Iterable[tuple[int, int, int]]) -> "SignedGraph":
        pos, neg = [], []
        for u, v, s in edges:
            (pos if s > 0 else neg).append((u, v))
        if len(set(map(lambda e: _pair(*e), pos + neg))) != len(pos) + len(neg):
            raise ValueError("repeated vertex pair")
        return cls(n, frozenset(pos), frozenset(neg))

    @classmethod
    def from_matrix(cls, A) -> "SignedGraph":
        A = np.asarray(A)
        n = A.shape[0]
        if A.shape != (n, n) or not np.array_equal(A, A.T):
            raise ValueError("adjacency matrix must be square and symmetric")
        if np.any(np.diag(A) != 0) or not np.isin(A, (-1, 0, 1)).all():
            raise ValueError("adjacency entries must be 0/+1/-1 with zero diagonal")
        pos = [(i, j) for i in range(n) for j in range(i + 1, n) if A[i, j] == 1]
        neg = [(i, j) for i in range(n) for j in range(i + 1, n) if A[i, j] == -1]
        return cls(n, frozenset(pos), frozenset(neg))

    @classmethod
    def complete(cls, n: int, sign: int = 1) -> "SignedGraph":
        e = itertools.combinations(range(n), 2)
        return cls.from_edges(n, pos=e) if sign > 0 else cls.from_edges(n, neg=e)

    @classmethod
    def path(cls, n: int) -> "SignedGraph":
        return cls.from_edges(n, pos=[(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int, negative: Iterable[int] = ()) -> "SignedGraph":
        """Cycle 0-1-...-(n-1)-0; ``negative`` lists indices i of edges {i, i+1 mod n}."""
        neg_idx = set(negative)
        edges = [(i, (i + 1) % n) for i in range(n)]
        return cls.from_edges(
            n,
            pos=[e for i, e in enumerate(edges) if i not in neg_idx],
            neg=[e for i, e in enumerate(edges) if i in neg_idx],
        )

    @cached_property
    def _adj(self) -> tuple[dict, ...]:
        adj: list[dict] = [dict() for _ in range(self.n)]
        for u, v in self.pos_edges:
            adj[u][v] = 1
            adj[v][u] = 1
        for u, v in self.neg_edges:
            adj[u][v] = -1
            adj[v][u] = -1
        return tuple(adj)

    def sign(self, u: int, v: int) -> int:
        """+1, -1, or 0 for a non-edge."""
        return self._adj[u].get(v, 0)

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def num_edges(self) -> int:
        return len(self.pos_edges) + len(self.neg_edges)

    def edges(self) -> list[tuple[int, int, int]]:
        """All edges as ``(u, v, sign)`` with u < v, sorted."""
        out = [(u, v, 1) for u, v in self.pos_edges] + [(u, v, -1) for u, v in self.neg_edges]
        return sorted(out)

    def sorted_edge_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pos_edges | self.neg_edges)

    def adjacency_matrix(self) -> np.ndarray:
        return adjacency_matrix(self)

    def __repr__(self) -> str:
        pos = sorted(self.pos_edges)
        neg = sorted(self.neg_edges)
        return f"SignedGraph(n={self.n}, pos={pos}, neg={neg})"


def adjacency_matrix(S: SignedGraph) -> np.ndarray:
    A = np.zeros((S.n, S.n), dtype=np.int64)
    for u, v in S.pos_edges:
        A[u, v] = A[v, u] = 1
    for u, v in S.neg_edges:
        A[u, v] = A[v, u] = -1
    return A


def _check_vertices(S: SignedGraph, W: Iterable[int]) -> frozenset:
    W = frozenset(int(w) for w in W)
    bad = [w for w in W if not 0 <= w < S.n]
    if bad:
        raise ValueError(f"vertices out of range: {sorted(bad)}")
    return W


def switch(S: SignedGraph, W: Iterable[int]) -> SignedGraph:
    """Flip the sign of every edge with exactly one endpoint in W."""
    W = _check_vertices(S, W)
    pos, neg = set(), set()
    for u, v, s in S.edges():
        if (u in W) != (v in W):
            s = -s
        (pos if s > 0 else neg).add((u, v))
    return SignedGraph(S.n, frozenset(pos), frozenset(neg))


def relabel(S: SignedGraph, perm: Sequence[int]) -> SignedGraph:
    """Image of S under the vertex map v -> perm[v]."""
    if sorted(perm) != list(range(S.n)):
        raise ValueError("perm must be a permutation of the vertex set")
    return SignedGraph(
        S.n,
        frozenset((perm[u], perm[v]) for u, v in S.pos_edges),
        frozenset((perm[u], perm[v]) for u, v in S.neg_edges),
    )


def negative(S: SignedGraph) -> SignedGraph:
    return SignedGraph(S.n, S.neg_edges, S.pos_edges)


def underlying(S: SignedGraph) -> SignedGraph:
    return SignedGraph(S.n, S.pos_edges | S.neg_edges, frozenset())


def components(S: SignedGraph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * S.n
    out = []
    for r in range(S.n):
        if seen[r]:
            continue
        comp, queue = [], deque([r])
        seen[r] = True
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w in S.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_connected(S: SignedGraph) -> bool:
    return S.n > 0 and len(components(S)) == 1


def min_degree(S: SignedGraph) -> int:
    if S.n == 0:
        raise ValueError("empty graph has no minimum degree")
    return min(S.degree(v) for v in range(S.n))


def induced_subgraph(S: SignedGraph, vertices: Iterable[int]) -> SignedGraph:
    """Induced subgraph on the given vertices, relabelled in increasing order."""
    vs = sorted(_check_vertices(S, vertices))
    if not vs:
        raise ValueError("vertex subset must be nonempty")
    idx = {v: i for i, v in enumerate(vs)}
    pos = [(idx[u], idx[v]) for u, v in S.pos_edges if u in idx and v in idx]
    neg = [(idx[u], idx[v]) for u, v in S.neg_edges if u in idx and v in idx]
    return SignedGraph.from_edges(len(vs), pos, neg)


def delete_vertex(S: SignedGraph, v: int) -> SignedGraph:
    return induced_subgraph(S, [u for u in range(S.n) if u != v])


def disjoint_union(*graphs: SignedGraph) -> SignedGraph:
    pos, neg, off = [], [], 0
    for G in graphs:
        pos += [(u + off, v + off) for u, v in G.pos_edges]
        neg += [(u + off, v + off) for u, v in G.neg_edges]
        off += G.n
    return SignedGraph.from_edges(off, pos, neg)


def _bfs_forest(S: SignedGraph) -> Iterator[tuple[Optional[int], int]]:
    """(parent, vertex) pairs in BFS order; parent is None for component roots."""
    seen = [False] * S.n
    for r in range(S.n):
        if seen[r]:
            continue
        seen[r] = True
        yield None, r
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for w in S.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    yield u, w
                    queue.append(w)


def canonical_switching_set(S: SignedGraph) -> frozenset:
    """The switching set W making every BFS-forest edge positive (roots unswitched)."""
    s = [1] * S.n
    for parent, v in _bfs_forest(S):
        if parent is not None:
            s[v] = s[parent] * S.sign(parent, v)
    return frozenset(v for v in range(S.n) if s[v] < 0)


def canonical_switch_form(S: SignedGraph) -> SignedGraph:
    """Unique member of the switching class of S (same labels) positive on the BFS forest.

    The forest is grown from the lowest vertex of each component with neighbours
    visited in increasing order, so the result depends only on the underlying
    graph and the switching class.
    """
    return switch(S, canonical_switching_set(S))


@dataclass(frozen=True)
class SwitchWitness:
    """Switch ``subset`` in the first graph, then relabel by ``bijection``."""

    subset: frozenset
    bijection: tuple

    def apply(self, S: SignedGraph) -> SignedGraph:
        return relabel(switch(S, self.subset), self.bijection)

    def inverse(self) -> "SwitchWitness":
        inv = [0] * len(self.bijection)
        for v, w in enumerate(self.bijection):
            inv[w] = v
        return SwitchWitness(frozenset(self.bijection[v] for v in self.subset), tuple(inv))

    def then(self, other: "SwitchWitness") -> "SwitchWitness":
        """Witness for applying self and then other."""
        moved = frozenset(self.bijection[v] for v in self.subset)
        sub = moved.symmetric_difference(other.subset)
        back = self.inverse().bijection
        return SwitchWitness(
            frozenset(back[w] for w in sub),
            tuple(other.bijection[self.bijection[v]] for v in range(len(self.bijection))),
        )

    def to_json(self) -> dict:
        return {"subset": sorted(self.subset), "bijection": list(self.bijection)}


def switching_witness_for_bijection(
    S1: SignedGraph, S2: SignedGraph, bijection: Sequence[int]
) -> Optional[SwitchWitness]:
    """Switching set W with relabel(switch(S1, W), bijection) == S2, if one exists."""
    if S1.n != S2.n or S1.num_edges != S2.num_edges:
        return None
    s = [0] * S1.n
    for parent, v in _bfs_forest(S1):
        if parent is None:
            s[v] = 1
        else:
            t = S2.sign(bijection[parent], bijection[v])
            if t == 0:
                return None
            s[v] = s[parent] * S1.sign(parent, v) * t
    for u, v, sg in S1.edges():
        if S2.sign(bijection[u], bijection[v]) != s[u] * s[v] * sg:
            return None
    return SwitchWitness(frozenset(v for v in range(S1.n) if s[v] < 0), tuple(bijection))


def _vertex_invariants(S: SignedGraph) -> list[tuple[int, ...]]:
    """Switching- and relabelling-invariant per-vertex data: diag(A^k), k = 2..4."""
    A = adjacency_matrix(S)
    A2 = A @ A
    A3 = A2 @ A
    A4 = A2 @ A2
    return [(int(A2[v, v]), int(A3[v, v]), int(A4[v, v])) for v in range(S.n)]


def switching_equivalent(S1: SignedGraph, S2: SignedGraph) -> Optional[SwitchWitness]:
    """Witness that some relabelling of a switching of S1 equals S2, or None.

    Prunes by edge count, per-vertex invariants and exact characteristic
    polynomials, then backtracks over bijections in BFS order, fixing the
    switching value of each vertex from its first already-mapped neighbour.
    """
    from .spectra import char_poly

    if S1.n != S2.n or S1.num_edges != S2.num_edges:
        return None
    n = S1.n
    inv1, inv2 = _vertex_invariants(S1), _vertex_invariants(S2)
    if sorted(inv1) != sorted(inv2):
        return None
    if n and char_poly(S1) != char_poly(S2):
        return None
    order = [v for _, v in _bfs_forest(S1)]
    pos_in_order = {v: i for i, v in enumerate(order)}
    # for each vertex in order: earlier vertices, and the first earlier neighbour
    earlier = [order[:i] for i in range(n)]
    anchor = []
    for i, v in enumerate(order):
        nb = [u for u in S1.neighbors(v) if pos_in_order[u] < i]
        anchor.append(min(nb, key=pos_in_order.get) if nb else None)
    phi = [-1] * n
    sval = [0] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        a = anchor[i]
        if a is not None:
            cands = [w for w in S2.neighbors(phi[a]) if not used[w]]
        else:
            cands = [w for w in range(n) if not used[w]]
        for w in cands:
            if inv2[w] != inv1[v]:
                continue
            if a is None:
                sv = 1
            else:
                sv = sval[a] * S1.sign(a, v) * S2.sign(phi[a], w)
            ok = True
            for u in earlier[i]:
                s1 = S1.sign(u, v)
                s2 = S2.sign(phi[u], w)
                if s2 != sval[u] * sv * s1:
                    ok = False
                    break
            if not ok:
                continue
            phi[v], sval[v], used[w] = w, sv, True
            if extend(i + 1):
                return True
            phi[v], sval[v], used[w] = -1, 0, False
        return False

    if not extend(0):
        return None
    witness = SwitchWitness(frozenset(v for v in range(n) if sval[v] < 0), tuple(phi))
    assert witness.apply(S1) == S2
    return witness


def switching_class_label(S: SignedGraph) -> tuple:
    """Complete invariant of the switching-isomorphism class.

    The smallest upper-triangle encoding of canonical_switch_form over all
    relabellings that list vertices by nondecreasing closed-walk invariants.
    Exhaustive within those cells, so only suited to small graphs.
    """
    n = S.n
    inv = _vertex_invariants(S)
    keys = sorted(set(inv))
    cells = [[v for v in range(n) if inv[v] == k] for k in keys]
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [v for part in choice for v in part]
        perm = [0] * n
        for new, old in enumerate(order):
            perm[old] = new
        C = canonical_switch_form(relabel(S, perm))
        A = adjacency_matrix(C)
        code = tuple(int(A[i, j]) for i in range(n) for j in range(i + 1, n))
        if best is None or code < best:
            best = code
    return (n, tuple(keys), tuple(len(c) for c in cells), best)


# ---------------------------------------------------------------------------
# .sg text format

def format_sg(S: SignedGraph) -> str:
    lines = [f"sg {S.n}"]
    lines += [f"{u} {v} {'+' if s > 0 else '-'}" for u, v, s in S.edges()]
    return "\n".join(lines) + "\n"


def _parse_edge_lines(lines: list[tuple[int, str]], n: int, signed: bool):
    seen = set()
    out = []
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != (3 if signed else 2):
            raise FormatError(f"line {lineno}: expected {'u v sign' if signed else 'u v'}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: bad vertex") from exc
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise FormatError(f"line {lineno}: bad edge {u} {v}")
        if signed:
            if parts[2] not in "+-" or len(parts[2]) != 1:
                raise FormatError(f"line {lineno}: sign must be + or -")
            pair = _pair(u, v)
            if pair in seen:
                raise FormatError(f"line {lineno}: duplicate pair {pair}")
            seen.add(pair)
            out.append((u, v, 1 if parts[2] == "+" else -1))
        else:
            out.append(_pair(u, v))
    return out


def _content_lines(text: str) -> list[tuple[int, str]]:
    return [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines()) if ln.strip()]


def _parse_header(lines, tag: str) -> int:
    if not lines:
        raise FormatError("empty file")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != tag:
        raise FormatError(f"line {lineno}: expected header '{tag} <n>'")
    try:
        n = int(parts[1])
    except ValueError as exc:
        raise FormatError(f"line {lineno}: bad vertex count") from exc
    if n < 0:
        raise FormatError(f"line {lineno}: negative vertex count")
    return n


def parse_sg(text: str) -> SignedGraph:
    lines = _content_lines(text)
    n = _parse_header(lines, "sg")
    return SignedGraph.from_signed_edges(n, _parse_edge_lines(lines[1:], n, signed=True))


def read_sg(path) -> SignedGraph:
    return parse_sg(Path(path).read_text())


def write_sg(S: SignedGraph, path) -> None:
    Path(path).write_text(format_sg(S))

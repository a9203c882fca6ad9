"""Root lines, integral representations and the classification of signed graphs
with smallest eigenvalue greater than -2."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .lines import (
    Multigraph,
    line_dagger,
    line_graph_double_edge,
    line_graph_unsigned,
    multigraph_isomorphic,
)
from .sigraph import (
    SignedGraph,
    SwitchWitness,
    _bfs_forest,
    delete_vertex,
    is_connected,
    switching_equivalent,
)
from .spectra import Cmp, lambda_min_cmp

__all__ = [
    "ClassificationVerdict",
    "Corollary14Result",
    "RootLine",
    "RootRepresentation",
    "Tag",
    "classify",
    "corollary14_check",
    "enumerate_lines",
    "find_e8_representation",
    "find_integral_representation",
    "iter_integral_representations",
    "representation_graph",
]


@dataclass(frozen=True)
class RootLine:
    vector: tuple
    system: str

    def doubled(self) -> tuple:
        return tuple(int(2 * x) for x in self.vector)


def _normalize(v: tuple) -> tuple:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    raise ValueError("zero vector")


def enumerate_lines(system: str, n: Optional[int] = None) -> list[RootLine]:
    """All lines of A_n (in R^{n+1}), D_n (in R^n) or E_8, one vector each."""
    system = system.upper()
    if system == "A":
        if n is None or n < 1:
            raise ValueError("A_n needs n >= 1")
        out = []
        for i, j in itertools.combinations(range(n + 1), 2):
            v = [0] * (n + 1)
            v[i], v[j] = 1, -1
            out.append(RootLine(tuple(v), "A"))
        return out
    if system == "D":
        if n is None or n < 4:
            raise ValueError("D_n needs n >= 4")
        return _d_lines(n, "D")
    if system in ("E8", "E"):
        if n not in (None, 8):
            raise ValueError("E8 lives in dimension 8")
        out = _d_lines(8, "E8")
        half = Fraction(1, 2)
        halves = set()
        for signs in itertools.product((1, -1), repeat=8):
            if signs.count(-1) % 2 == 0:
                halves.add(_normalize(tuple(s * half for s in signs)))
        out += [RootLine(v, "E8") for v in sorted(halves)]
        return out
    raise ValueError(f"unknown line system {system!r}")


def _d_lines(n: int, system: str) -> list[RootLine]:
    out = []
    for i, j in itertools.combinations(range(n), 2):
        for s in (1, -1):
            v = [0] * n
            v[i], v[j] = 1, s
            out.append(RootLine(tuple(v), system))
    return out


@dataclass(frozen=True)
class RootRepresentation:
    """Vectors in Z^dim, one per vertex, with Gram matrix A + 2I and no zero coordinate."""

    dim: int
    vectors: tuple

    def matrix(self) -> np.ndarray:
        """dim x m matrix whose columns are the vectors."""
        return np.array(self.vectors, dtype=np.int64).reshape(len(self.vectors), self.dim).T

    def gram(self) -> np.ndarray:
        M = self.matrix()
        return M.T @ M

    def is_valid_for(self, S: SignedGraph) -> bool:
        M = self.matrix()
        return (
            np.array_equal(M.T @ M, S.adjacency_matrix() + 2 * np.eye(S.n, dtype=np.int64))
            and bool(np.all(np.any(M != 0, axis=1)))
        )

    def to_json(self) -> list[list[int]]:
        return [list(v) for v in self.vectors]


def _check_input(S: SignedGraph) -> None:
    if lambda_min_cmp(S, -2) is not Cmp.GREATER:
        raise ValueError("smallest eigenvalue must be greater than -2")


def iter_integral_representations(S: SignedGraph, dim: int) -> Iterator[RootRepresentation]:
    """All D-type representations in Z^dim, up to signed coordinate permutations.

    Vertices are placed in BFS order.  The first vector is e_0 + e_1; each new
    coordinate is the smallest unused one and enters with sign +1.  Adjacent
    vertices share exactly one coordinate, so every later vertex is built from
    one coordinate of its BFS parent plus one other coordinate.  Roots of
    later components may use any pair of coordinates.
    """
    m = S.n
    if m == 0:
        return
    order = list(_bfs_forest(S))
    vec: dict[int, dict[int, int]] = {}

    def consistent(v: int, cand: dict, upto: int) -> bool:
        for _, u in order[:upto]:
            ip = sum(s * cand.get(c, 0) for c, s in vec[u].items())
            if ip != S.sign(u, v):
                return False
        return True

    def extend(i: int, used: int):
        if i == m:
            if used == dim:
                yield RootRepresentation(
                    dim, tuple(tuple(vec[v].get(c, 0) for c in range(dim)) for v in range(m))
                )
            return
        if dim - used > m - i:
            return
        parent, v = order[i]
        if parent is None:
            yield from extend_root(i, v, used)
            return
        target = S.sign(parent, v)
        pv = vec[parent]
        for a, sa in sorted(pv.items()):
            s_a = sa * target  # v_a * p_a must equal the parent inner product
            for b in range(min(used + 1, dim)):
                if b in pv:
                    continue
                signs = (1,) if b == used else (1, -1)
                for s_b in signs:
                    cand = {a: s_a, b: s_b}
                    if not consistent(v, cand, i):
                        continue
                    vec[v] = cand
                    yield from extend(i + 1, max(used, b + 1))
                    del vec[v]

    def extend_root(i: int, v: int, used: int):
        top = min(used + 2, dim)
        for a, b in itertools.combinations(range(top), 2):
            # fresh coordinates are taken in order: used, then used + 1
            if not (b < used or (b == used and a < used) or (a, b) == (used, used + 1)):
                continue
            sa_opts = (1,) if a == used else (1, -1)
            sb_opts = (1,) if b >= used else (1, -1)
            for s_a in sa_opts:
                for s_b in sb_opts:
                    cand = {a: s_a, b: s_b}
                    if not consistent(v, cand, i):
                        continue
                    vec[v] = cand
                    yield from extend(i + 1, max(used, b + 1))
                    del vec[v]

    _, root = order[0]
    if dim < 2:
        return
    vec[root] = {0: 1, 1: 1}
    yield from extend(1, 2)


def find_integral_representation(S: SignedGraph) -> Optional[RootRepresentation]:
    """A representation, or None when S is exceptional.

    Dimension m + 1 (tree representation graphs) is tried first.  In
    dimension m a unicyclic representation graph is preferred over a tree
    with a double edge; both occur, e.g. for the 4-cycle with one negative edge.
    """
    _check_input(S)
    for rep in iter_integral_representations(S, S.n + 1):
        assert rep.is_valid_for(S)
        return rep
    fallback = None
    for rep in iter_integral_representations(S, S.n):
        assert rep.is_valid_for(S)
        if representation_graph(rep).is_simple:
            return rep
        fallback = fallback or rep
    return fallback


def representation_graph(rep: RootRepresentation) -> Multigraph:
    """Multigraph on the coordinates; each vector contributes the edge given by its support."""
    edges = []
    for v in rep.vectors:
        supp = [i for i, x in enumerate(v) if x]
        if len(supp) != 2 or any(abs(v[i]) != 1 for i in supp) or any(isinstance(x, Fraction) and x.denominator != 1 for x in v):
            raise ValueError("not a D-type vector")
        edges.append(tuple(supp))
    return Multigraph(rep.dim, tuple(edges))


class Tag(str, enum.Enum):
    TREE = "TREE"
    ODD_UNICYCLIC = "ODD_UNICYCLIC"
    EVEN_UNICYCLIC = "EVEN_UNICYCLIC"
    DOUBLE_EDGE_TREE = "DOUBLE_EDGE_TREE"
    EXCEPTIONAL = "EXCEPTIONAL"
    NOT_GT_MINUS2 = "NOT_GT_MINUS2"


_SHAPE_TAG = {
    "tree": Tag.TREE,
    "odd_unicyclic": Tag.ODD_UNICYCLIC,
    "even_unicyclic": Tag.EVEN_UNICYCLIC,
    "double_edge_tree": Tag.DOUBLE_EDGE_TREE,
}


def dagger_edges(H: Multigraph) -> tuple[int, int]:
    """Deterministic pair of incident cycle edges: the first cycle edge and its first cycle neighbour."""
    cyc = H.cycle_edges()
    u = cyc[0]
    for w in cyc[1:]:
        if len(set(H.edges[u]) & set(H.edges[w])) == 1:
            return u, w
    raise AssertionError("cycle edges do not meet")


def reconstruct(H: Multigraph) -> SignedGraph:
    """The signed graph the classification associates with representation graph H."""
    shape = H.shape()
    if shape in ("tree", "odd_unicyclic"):
        return line_graph_unsigned(H)
    if shape == "even_unicyclic":
        return line_dagger(H, *dagger_edges(H))
    if shape == "double_edge_tree":
        return line_graph_double_edge(H)
    raise ValueError(f"no reconstruction for shape {shape}")


@dataclass
class ClassificationVerdict:
    tag: Tag
    representation: Optional[RootRepresentation] = None
    rep_graph: Optional[Multigraph] = None
    reconstruction: Optional[SignedGraph] = None
    witness: Optional[SwitchWitness] = None
    alternatives: list = field(default_factory=list)
    e8_representation: Optional[tuple] = None

    def to_json(self) -> dict:
        out = {"tag": self.tag.value}
        if self.representation is not None:
            out["n"] = self.representation.dim
            out["vectors"] = self.representation.to_json()
        if self.rep_graph is not None:
            out["rep_graph"] = {"n": self.rep_graph.n, "edges": [list(e) for e in self.rep_graph.edges]}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.alternatives:
            out["alternatives"] = [
                {"tag": t.value, "rep_graph": {"n": H.n, "edges": [list(e) for e in H.edges]}}
                for t, H in self.alternatives
            ]
        if self.e8_representation is not None:
            out["e8_vectors_doubled"] = [list(v) for v in self.e8_representation]
        return out


def _verdict_for(S: SignedGraph, rep: RootRepresentation) -> ClassificationVerdict:
    H = representation_graph(rep)
    shape = H.shape()
    tag = _SHAPE_TAG.get(shape)
    if tag is None:
        raise AssertionError(f"representation graph of unexpected shape {shape}")
    # dimension law: m + 1 coordinates only for trees
    if (rep.dim == S.n + 1) != (tag is Tag.TREE):
        raise AssertionError("dimension does not match the representation graph shape")
    recon = reconstruct(H)
    w = switching_equivalent(S, recon)
    if w is None:
        raise AssertionError("signed graph is not switching equivalent to its reconstruction")
    return ClassificationVerdict(tag, rep, H, recon, w)


def classify(
    S: SignedGraph, alternatives: bool = False, e8: bool = False, max_solutions: int = 20000
) -> ClassificationVerdict:
    """Case of the classification for a connected signed graph.

    The verdict uses the first representation found (dimension m + 1 first).
    With ``alternatives`` every non-isomorphic representation graph found in
    either dimension is listed too; graphs such as K_3 have more than one.

    A disconnected S is accepted only when its representation graph is
    connected, as for the two isolated vertices built from a bare double edge.
    """
    if lambda_min_cmp(S, -2) is not Cmp.GREATER:
        return ClassificationVerdict(Tag.NOT_GT_MINUS2)
    rep = find_integral_representation(S)
    if not is_connected(S) and (rep is None or representation_graph(rep).shape() not in _SHAPE_TAG):
        raise ValueError("disconnected signed graph without a connected representation graph")
    if rep is None:
        v = ClassificationVerdict(Tag.EXCEPTIONAL)
        if e8:
            v.e8_representation = find_e8_representation(S)
        return v
    verdict = _verdict_for(S, rep)
    if alternatives:
        verdict.alternatives = representation_graphs(S, max_solutions)
    return verdict


def representation_graphs(S: SignedGraph, max_solutions: int = 20000) -> list[tuple[Tag, Multigraph]]:
    """Pairwise non-isomorphic representation graphs over both dimensions."""
    found: list[tuple[Tag, Multigraph]] = []
    count = 0
    for dim in (S.n + 1, S.n):
        for rep in iter_integral_representations(S, dim):
            count += 1
            if count > max_solutions:
                return found
            H = representation_graph(rep)
            if not any(multigraph_isomorphic(H, G) for _, G in found):
                found.append((_SHAPE_TAG[H.shape()], H))
    return found


@dataclass
class Corollary14Result:
    tree: Multigraph
    removed: Optional[int]
    witness: SwitchWitness

    def to_json(self) -> dict:
        return {
            "tree": {"n": self.tree.n, "edges": [list(e) for e in self.tree.edges]},
            "removed": self.removed,
            "witness": self.witness.to_json(),
        }


def corollary14_check(S: SignedGraph, verdict: Optional[ClassificationVerdict] = None) -> Corollary14Result:
    """A tree H and at most one vertex of S whose removal leaves something
    switching equivalent to the line graph of H."""
    verdict = verdict or classify(S)
    if verdict.tag in (Tag.EXCEPTIONAL, Tag.NOT_GT_MINUS2):
        raise ValueError(f"no tree for a {verdict.tag.value} graph")
    H, w = verdict.rep_graph, verdict.witness
    if verdict.tag is Tag.TREE:
        return Corollary14Result(H, None, w)
    if verdict.tag is Tag.ODD_UNICYCLIC:
        drop = H.cycle_edges()[0]
    elif verdict.tag is Tag.EVEN_UNICYCLIC:
        drop = dagger_edges(H)[0]
    else:
        drop = H.edges.index(H.double_edge) + 1
    removed = w.inverse().bijection[drop]
    tree = H.without_edge(drop)
    assert tree.shape() == "tree"
    rest = delete_vertex(S, removed)
    w2 = switching_equivalent(rest, line_graph_unsigned(tree))
    if w2 is None:
        raise AssertionError("vertex-deleted graph is not a tree line graph")
    return Corollary14Result(tree, removed, w2)


# ---------------------------------------------------------------------------
# E8 certificates (advisory)

def _e8_roots_doubled() -> list[tuple]:
    roots = set()
    for line in enumerate_lines("E8"):
        v = line.doubled()
        roots.add(v)
        roots.add(tuple(-x for x in v))
    return sorted(roots)


def find_e8_representation(S: SignedGraph) -> Optional[tuple]:
    """Doubled E8 root vectors with Gram matrix A + 2I (inner products scaled by 4)."""
    if not is_connected(S):
        raise ValueError("signed graph must be connected")
    roots = _e8_roots_doubled()
    order = [v for _, v in _bfs_forest(S)]
    vec: dict[int, tuple] = {}

    def ip(a, b):
        return sum(x * y for x, y in zip(a, b))

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for r in roots:
            if all(ip(vec[u], r) == 4 * S.sign(u, v) for u in order[:i]):
                vec[v] = r
                if extend(i + 1):
                    return True
                del vec[v]
        return False

    vec[order[0]] = roots[-1]
    if not extend(1):
        return None
    return tuple(vec[v] for v in range(S.n))

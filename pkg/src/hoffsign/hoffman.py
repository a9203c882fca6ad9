"""Hoffman signed graphs: slim/fat labels, B-matrices, decompositions, H-line tests."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .sigraph import (
    FormatError,
    SignedGraph,
    _content_lines,
    _parse_edge_lines,
    _parse_header,
    adjacency_matrix,
    format_sg,
    induced_subgraph,
    switch,
)
from .spectra import Cmp, Threshold, char_poly, lambda_min_cmp

__all__ = [
    "CATALOG",
    "Decomposition",
    "DecompositionCheck",
    "HLineCertificate",
    "HoffmanSGraph",
    "b_matrix",
    "catalog_class",
    "direct_sum_check",
    "finest_decomposition",
    "format_hsg",
    "h3_elimination",
    "hoffman_eigen_min",
    "hoffman_switching_isomorphic",
    "induced_hoffman_subgraph",
    "is_H_line",
    "parse_hsg",
    "read_hsg",
    "slim_switch",
    "verify_decomposition",
    "write_hsg",
]

SLIM, FAT = "s", "f"


@dataclass(frozen=True)
class HoffmanSGraph:
    """A signed graph whose vertices carry a slim ('s') or fat ('f') label.

    Fat vertices are pairwise non-adjacent and each has a slim neighbour.
    """

    graph: SignedGraph
    labels: tuple

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != self.graph.n:
            raise ValueError("need one label per vertex")
        if any(lab not in (SLIM, FAT) for lab in labels):
            raise ValueError("labels must be 's' or 'f'")
        for u, v, _ in self.graph.edges():
            if labels[u] == FAT and labels[v] == FAT:
                raise ValueError(f"fat vertices {u} and {v} are adjacent")
        for v in range(self.graph.n):
            if labels[v] == FAT and not any(labels[w] == SLIM for w in self.graph.neighbors(v)):
                raise ValueError(f"fat vertex {v} has no slim neighbour")

    @classmethod
    def build(cls, labels: str, pos=(), neg=()) -> "HoffmanSGraph":
        """``labels`` is a string such as ``"sff"``."""
        return cls(SignedGraph.from_edges(len(labels), pos, neg), tuple(labels))

    @property
    def n(self) -> int:
        return self.graph.n

    @cached_property
    def slim(self) -> list[int]:
        return [v for v, lab in enumerate(self.labels) if lab == SLIM]

    @cached_property
    def fat(self) -> list[int]:
        return [v for v, lab in enumerate(self.labels) if lab == FAT]

    def fat_neighbors(self, x: int) -> set[int]:
        return {w for w in self.graph.neighbors(x) if self.labels[w] == FAT}

    def slim_neighbors(self, x: int) -> set[int]:
        return {w for w in self.graph.neighbors(x) if self.labels[w] == SLIM}

    def representing_vector(self, x: int) -> np.ndarray:
        """Signs of the edges from slim vertex x to each fat vertex (in ``self.fat`` order)."""
        if self.labels[x] != SLIM:
            raise ValueError(f"vertex {x} is not slim")
        return np.array([self.graph.sign(x, f) for f in self.fat], dtype=np.int64)

    def slim_subgraph(self) -> SignedGraph:
        if not self.slim:
            return SignedGraph(0)
        return induced_subgraph(self.graph, self.slim)


def b_matrix(h: HoffmanSGraph) -> np.ndarray:
    """A_s - C C^T, rows and columns indexed by the slim vertices in order."""
    A = adjacency_matrix(h.graph)
    As = A[np.ix_(h.slim, h.slim)]
    C = A[np.ix_(h.slim, h.fat)]
    return As - C @ C.T


def hoffman_eigen_min(h: HoffmanSGraph, t: Threshold) -> Cmp:
    """Exact comparison of the smallest eigenvalue of h with t."""
    if not h.slim:
        raise ValueError("Hoffman graph without slim vertices has no eigenvalues")
    return lambda_min_cmp(b_matrix(h), t)


def slim_switch(h: HoffmanSGraph, W: Iterable[int]) -> HoffmanSGraph:
    W = frozenset(W)
    fat = [w for w in W if not 0 <= w < h.n or h.labels[w] != SLIM]
    if fat:
        raise ValueError(f"can only switch at slim vertices, got {sorted(fat)}")
    return HoffmanSGraph(switch(h.graph, W), h.labels)


def induced_hoffman_subgraph(h: HoffmanSGraph, vertices: Iterable[int]) -> HoffmanSGraph:
    vs = sorted(set(vertices))
    return HoffmanSGraph(induced_subgraph(h.graph, vs), tuple(h.labels[v] for v in vs))


def hoffman_switching_isomorphic(h1: HoffmanSGraph, h2: HoffmanSGraph) -> bool:
    """Brute-force test for slim switching followed by a label-preserving isomorphism.

    Intended for the small graphs of the catalogue and decomposition parts.
    """
    if h1.n != h2.n or len(h1.slim) != len(h2.slim) or h1.graph.num_edges != h2.graph.num_edges:
        return False
    if h1.n > 9:
        raise ValueError("brute-force Hoffman isomorphism is limited to 9 vertices")
    s1, f1, s2, f2 = h1.slim, h1.fat, h2.slim, h2.fat
    tset = set(h2.graph.edges())
    for ps in itertools.permutations(s2):
        for pf in itertools.permutations(f2):
            perm = [0] * h1.n
            for a, b in zip(s1, ps):
                perm[a] = b
            for a, b in zip(f1, pf):
                perm[a] = b
            if any(h2.graph.sign(perm[u], perm[v]) == 0 for u, v, _ in h1.graph.edges()):
                continue
            for mask in range(1 << len(s1)):
                W = {s1[i] for i in range(len(s1)) if mask >> i & 1}
                good = True
                for u, v, s in h1.graph.edges():
                    if (u in W) != (v in W):
                        s = -s
                    a, b = perm[u], perm[v]
                    if (min(a, b), max(a, b), s) not in tset:
                        good = False
                        break
                if good:
                    return True
    return False


CATALOG: dict[str, HoffmanSGraph] = {
    "h2": HoffmanSGraph.build("sff", pos=[(0, 1), (0, 2)]),
    "h2-": HoffmanSGraph.build("sff", pos=[(0, 1)], neg=[(0, 2)]),
    "h2--": HoffmanSGraph.build("sff", neg=[(0, 1), (0, 2)]),
    "h3": HoffmanSGraph.build("ssf", pos=[(0, 2), (1, 2)]),
    "h4": HoffmanSGraph.build("ssff", pos=[(0, 1), (0, 2), (1, 3)]),
}

# switching classes: h2-- lies in the class of h2
CLASS_REPRESENTATIVES = ("h2", "h2-", "h3", "h4")
_ALIASES = {"h2--": "h2", "h2": "h2", "h2-": "h2-", "h3": "h3", "h4": "h4"}


def catalog_class(h: HoffmanSGraph) -> Optional[str]:
    """Name of the catalogue switching class containing h, if any."""
    for name in CLASS_REPRESENTATIVES:
        rep = CATALOG[name]
        if rep.n == h.n and hoffman_switching_isomorphic(h, rep):
            return name
    return None


@dataclass(frozen=True)
class Decomposition:
    """Vertex subsets of a parent Hoffman graph; fat vertices may be shared."""

    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in self.parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def subgraphs(self, h: HoffmanSGraph) -> list[HoffmanSGraph]:
        return [induced_hoffman_subgraph(h, p) for p in self.parts]

    def to_json(self) -> list[list[int]]:
        return [sorted(p) for p in self.parts]


@dataclass(frozen=True)
class DecompositionCheck:
    ok: bool
    condition: Optional[str] = None
    witness: tuple = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_decomposition(h: HoffmanSGraph, parts: Iterable[Iterable[int]]) -> DecompositionCheck:
    """Check the four decomposition conditions; report the first violation."""
    parts = [frozenset(p) for p in parts]
    for i, p in enumerate(parts):
        if not p or any(not 0 <= v < h.n for v in p):
            return DecompositionCheck(False, "part", (i,), "part is empty or out of range")
        try:
            induced_hoffman_subgraph(h, p)
        except ValueError as exc:
            return DecompositionCheck(False, "part", (i,), f"not a Hoffman subgraph: {exc}")
    covered = frozenset().union(*parts) if parts else frozenset()
    missing = sorted(set(range(h.n)) - covered)
    if missing:
        return DecompositionCheck(False, "i", (missing[0],), "vertex not covered")
    owner: dict[int, int] = {}
    for i, p in enumerate(parts):
        for x in p:
            if h.labels[x] == SLIM:
                if x in owner:
                    return DecompositionCheck(False, "ii", (x,), f"slim vertex in parts {owner[x]} and {i}")
                owner[x] = i
    for x, i in owner.items():
        out = h.fat_neighbors(x) - parts[i]
        if out:
            return DecompositionCheck(False, "iii", (x, min(out)), "fat neighbour outside the part")
    vec = {x: h.representing_vector(x) for x in h.slim}
    for x, y in itertools.combinations(h.slim, 2):
        if owner[x] != owner[y]:
            ip = int(vec[x] @ vec[y])
            if ip != h.graph.sign(x, y):
                return DecompositionCheck(
                    False, "iv", (x, y), f"inner product {ip} but edge sign {h.graph.sign(x, y)}"
                )
    return DecompositionCheck(True)


def finest_decomposition(h: HoffmanSGraph) -> Decomposition:
    """Join slim vertices whose edge sign disagrees with their inner product.

    Parts are the connected classes of that relation, each closed under fat
    neighbours.  The graph is decomposable iff there are at least two parts.
    """
    slim = h.slim
    parent = {x: x for x in slim}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    vec = {x: h.representing_vector(x) for x in slim}
    for x, y in itertools.combinations(slim, 2):
        if int(vec[x] @ vec[y]) != h.graph.sign(x, y):
            parent[find(x)] = find(y)
    groups: dict[int, set[int]] = {}
    for x in slim:
        groups.setdefault(find(x), set()).add(x)
    parts = []
    for g in sorted(groups.values(), key=min):
        p = set(g)
        for x in g:
            p |= h.fat_neighbors(x)
        parts.append(frozenset(p))
    dec = Decomposition(tuple(parts))
    check = verify_decomposition(h, dec.parts)
    assert check.ok, check
    return dec


def direct_sum_check(h: HoffmanSGraph, parts: Iterable[Iterable[int]]) -> bool:
    """B(h) is the direct sum of the parts' B-matrices; hence lambda_min splits."""
    parts = [frozenset(p) for p in parts]
    check = verify_decomposition(h, parts)
    if not check:
        raise ValueError(f"invalid decomposition: condition {check.condition}: {check.message}")
    B = b_matrix(h)
    index = {x: i for i, x in enumerate(h.slim)}
    owner = {x: i for i, p in enumerate(parts) for x in p if h.labels[x] == SLIM}
    for x, y in itertools.product(h.slim, repeat=2):
        if owner[x] != owner[y] and B[index[x], index[y]] != 0:
            return False
    product = None
    for p in parts:
        sub = induced_hoffman_subgraph(h, p)
        Bi = b_matrix(sub)
        ids = [index[x] for x in sorted(p) if h.labels[x] == SLIM]
        if not np.array_equal(B[np.ix_(ids, ids)], Bi):
            return False
        if Bi.size:
            cp = char_poly(Bi)
            product = cp if product is None else product * cp
    if not h.slim:
        return True
    return product == char_poly(B)


# ---------------------------------------------------------------------------
# H-line signed graphs

_FAMILY_NAMES = {"h2", "h2-", "h3"}


def _normalize_family(family: Iterable[str]) -> frozenset:
    fam = set()
    for name in family:
        key = _ALIASES.get(str(name).strip().lower().replace("h_", "h"))
        if key not in _FAMILY_NAMES:
            raise ValueError(f"family members must be among h2, h2-, h3; got {name!r}")
        fam.add(key)
    if not fam:
        raise ValueError("family must be nonempty")
    return frozenset(fam)


@dataclass(frozen=True)
class HLineCertificate:
    """A Hoffman supergraph whose slim vertices ``0..n-1`` induce the input graph.

    ``decomposition`` has parts whose switching classes are listed in ``classes``.
    """

    supergraph: HoffmanSGraph
    decomposition: Decomposition
    classes: tuple
    vectors: tuple

    def to_json(self) -> dict:
        return {
            "supergraph": {
                "n": self.supergraph.n,
                "edges": [[u, v, s] for u, v, s in self.supergraph.graph.edges()],
            },
            "labels": "".join(self.supergraph.labels),
            "parts": self.decomposition.to_json(),
            "classes": list(self.classes),
        }


def _vector_candidates(k: int, family: frozenset):
    """Vectors (as sorted ((coord, sign), ...)) over coords < k plus fresh ones in order."""
    coords_one = list(range(k + 1))
    if "h3" in family:
        for c in coords_one:
            for s in (1, -1):
                yield ((c, s),)
    for a in range(k + 1):
        for b in range(a + 1, k + 2):
            if b == k + 1 and a != k:
                continue
            for sa in (1, -1):
                for sb in (1, -1):
                    kind = "h2" if sa == sb else "h2-"
                    if kind in family:
                        yield ((a, sa), (b, sb))


def _ip(x, y) -> int:
    dy = dict(y)
    return sum(s * dy.get(c, 0) for c, s in x)


def is_H_line(S: SignedGraph, family: Iterable[str], limit: int = 12) -> Optional[HLineCertificate]:
    """Decide whether S is the slim part of an induced subgraph of a Hoffman graph
    decomposing into parts from ``family`` (a subset of h2, h2-, h3).

    Every slim vertex gets a representing vector: ``+-(e_a+e_b)`` for h2 parts,
    ``+-(e_a-e_b)`` for h2- parts, ``+-e_a`` for a slim vertex of an h3 part.
    Two slim vertices with a common single fat neighbour and no edge form an h3
    part; a lone one has its partner outside the induced subgraph.
    """
    fam = _normalize_family(family)
    if S.n > limit:
        raise ValueError(f"graph has {S.n} vertices; limit is {limit}")
    n = S.n
    order = sorted(range(n), key=lambda v: (-S.degree(v), v))
    vec: dict[int, tuple] = {}
    partner: dict[int, int] = {}
    max_dim = 2 * n

    def extend(i: int, k: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for cand in _vector_candidates(k, fam):
            top = max(c for c, _ in cand)
            if top >= max_dim:
                continue
            paired = None
            ok = True
            for u in order[:i]:
                ip = _ip(vec[u], cand)
                a = S.sign(u, v)
                if ip == a:
                    continue
                if (a == 0 and len(cand) == 1 and len(vec[u]) == 1 and paired is None
                        and u not in partner):
                    paired = u
                    continue
                ok = False
                break
            if not ok:
                continue
            vec[v] = cand
            if paired is not None:
                partner[v], partner[paired] = paired, v
            if extend(i + 1, max(k, top + 1)):
                return True
            del vec[v]
            if paired is not None:
                del partner[v], partner[paired]
        return False

    if not extend(0, 0):
        return None
    return _build_hline_certificate(S, vec, partner, fam)


def _build_hline_certificate(S, vec, partner, fam) -> HLineCertificate:
    n = S.n
    lonely = [x for x in range(n) if len(vec[x]) == 1 and x not in partner]
    coords = sorted({c for x in range(n) for c, _ in vec[x]})
    all_vec = dict(vec)
    extra = {}
    for j, x in enumerate(lonely):
        y = n + j
        extra[y] = x
        all_vec[y] = ((vec[x][0][0], 1),)
    n_slim = n + len(lonely)
    fat_index = {c: n_slim + i for i, c in enumerate(coords)}
    pos, neg = set(S.pos_edges), set(S.neg_edges)
    for y, x in extra.items():
        for z in range(n_slim):
            if z in (x, y):
                continue
            ip = _ip(all_vec[y], all_vec[z])
            if ip:
                (pos if ip > 0 else neg).add((min(y, z), max(y, z)))
    for x in range(n_slim):
        for c, s in all_vec[x]:
            (pos if s > 0 else neg).add((x, fat_index[c]))
    labels = (SLIM,) * n_slim + (FAT,) * len(coords)
    sup = HoffmanSGraph(SignedGraph.from_edges(n_slim + len(coords), pos, neg), labels)
    parts, classes, done = [], [], set()
    for x in range(n_slim):
        if x in done:
            continue
        fats = {fat_index[c] for c, _ in all_vec[x]}
        if len(all_vec[x]) == 2:
            parts.append(frozenset({x} | fats))
            (s1, s2) = (s for _, s in all_vec[x])
            classes.append("h2" if s1 == s2 else "h2-")
            done.add(x)
        else:
            mate = partner.get(x)
            if mate is None:
                mate = next((y for y, z in extra.items() if z == x), None)
                if mate is None:
                    mate = extra[x]
            parts.append(frozenset({x, mate} | fats))
            classes.append("h3")
            done |= {x, mate}
    dec = Decomposition(tuple(parts))
    check = verify_decomposition(sup, dec.parts)
    assert check.ok, check
    assert all(c in fam for c in classes)
    assert induced_subgraph(sup.graph, range(n)) == S
    return HLineCertificate(sup, dec, tuple(classes), tuple(vec[x] for x in range(n)))


def part_class(h: HoffmanSGraph, part: Iterable[int]) -> Optional[str]:
    return catalog_class(induced_hoffman_subgraph(h, part))


def h3_elimination(h: HoffmanSGraph, parts: Iterable[Iterable[int]]) -> tuple[HoffmanSGraph, Decomposition]:
    """Replace every h3 part by an h2 part and an h2- part sharing a new fat vertex.

    The slim vertices of each h3 part are first switched so both edges to the
    fat vertex are positive; the new slim subgraph is that switching of the old.
    """
    parts = [frozenset(p) for p in parts]
    check = verify_decomposition(h, parts)
    if not check:
        raise ValueError(f"invalid decomposition: condition {check.condition}")
    classes = [part_class(h, p) for p in parts]
    bad = [c for c in classes if c not in _FAMILY_NAMES]
    if bad:
        raise ValueError(f"parts outside {{h2, h2-, h3}}: {bad}")
    W = set()
    for p, c in zip(parts, classes):
        if c == "h3":
            (f,) = [v for v in p if h.labels[v] == FAT]
            W |= {x for x in p if h.labels[x] == SLIM and h.graph.sign(x, f) < 0}
    g = slim_switch(h, W).graph
    n = h.n
    pos, neg = set(g.pos_edges), set(g.neg_edges)
    labels = list(h.labels)
    new_parts = []
    for p, c in zip(parts, classes):
        if c != "h3":
            new_parts.append(p)
            continue
        (f,) = [v for v in p if h.labels[v] == FAT]
        x, y = sorted(v for v in p if h.labels[v] == SLIM)
        F = n
        n += 1
        labels.append(FAT)
        pos.add((x, F))
        neg.add((y, F))
        new_parts += [frozenset({x, f, F}), frozenset({y, f, F})]
    out = HoffmanSGraph(SignedGraph.from_edges(n, pos, neg), tuple(labels))
    return out, Decomposition(tuple(new_parts))


# ---------------------------------------------------------------------------
# .hsg text format

def format_hsg(h: HoffmanSGraph) -> str:
    body = format_sg(h.graph).splitlines()[1:]
    lines = [f"hsg {h.n}", "labels " + " ".join(h.labels)] + body
    return "\n".join(lines) + "\n"


def parse_hsg(text: str) -> HoffmanSGraph:
    lines = _content_lines(text)
    n = _parse_header(lines, "hsg")
    if len(lines) < 2:
        raise FormatError("missing labels line")
    lineno, lab_line = lines[1]
    parts = lab_line.split()
    if not parts or parts[0] != "labels" or len(parts) != n + 1:
        raise FormatError(f"line {lineno}: expected 'labels' followed by {n} labels")
    labels = tuple(parts[1:])
    if any(lab not in (SLIM, FAT) for lab in labels):
        raise FormatError(f"line {lineno}: labels must be s or f")
    edges = _parse_edge_lines(lines[2:], n, signed=True)
    try:
        return HoffmanSGraph(SignedGraph.from_signed_edges(n, edges), labels)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def read_hsg(path) -> HoffmanSGraph:
    return parse_hsg(Path(path).read_text())


def write_hsg(h: HoffmanSGraph, path) -> None:
    Path(path).write_text(format_hsg(h))

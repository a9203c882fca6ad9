"""Small signed graphs up to switching and isomorphism."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .sigraph import SignedGraph, _bfs_forest, canonical_switch_form, min_degree, relabel
from .spectra import AlgebraicThreshold, Cmp, lambda_min_cmp

__all__ = [
    "EnumerationSpec",
    "MAX_N",
    "automorphisms",
    "enumerate_signed",
    "parallel_map",
    "unsigned_graphs",
    "worker_count",
]

# graphs come from the networkx atlas, which stops at 7 vertices
MAX_N = 7
WORKERS_ENV = "HOFFSIGN_WORKERS"

_OPS = {
    "<": lambda c: c is Cmp.LESS,
    "<=": lambda c: c is not Cmp.GREATER,
    "==": lambda c: c is Cmp.EQUAL,
    ">=": lambda c: c is not Cmp.LESS,
    ">": lambda c: c is Cmp.GREATER,
}


@dataclass(frozen=True)
class EnumerationSpec:
    max_n: int
    min_n: int = 1
    connected: bool = True
    dedup: str = "switching"  # or "isomorphism"
    lambda_filters: tuple = ()  # pairs (op, threshold), e.g. (">=", "-sqrt2")
    min_degree: Optional[int] = None

    def __post_init__(self):
        if not 1 <= self.min_n <= self.max_n:
            raise ValueError("need 1 <= min_n <= max_n")
        if self.max_n > MAX_N:
            raise ValueError(f"enumeration is limited to {MAX_N} vertices")
        if self.dedup not in ("switching", "isomorphism"):
            raise ValueError("dedup must be 'switching' or 'isomorphism'")
        for op, _ in self.lambda_filters:
            if op not in _OPS:
                raise ValueError(f"unknown comparison {op!r}")

    def accepts(self, S: SignedGraph) -> bool:
        if self.min_degree is not None and min_degree(S) < self.min_degree:
            return False
        for op, t in self.lambda_filters:
            if not _OPS[op](lambda_min_cmp(S, AlgebraicThreshold.of(t))):
                return False
        return True


@lru_cache(maxsize=None)
def unsigned_graphs(n: int, connected: bool = True) -> tuple:
    """Unlabelled simple graphs on n vertices as sorted edge tuples (atlas order)."""
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be between 1 and {MAX_N}")
    out = []
    for G in nx.graph_atlas_g():
        if G.number_of_nodes() != n:
            continue
        if connected and not nx.is_connected(G):
            continue
        out.append(tuple(sorted(tuple(sorted(e)) for e in G.edges())))
    return tuple(out)


def automorphisms(n: int, edges: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    return [tuple(m[v] for v in range(n)) for m in GraphMatcher(G, G).isomorphisms_iter()]


def _switching_classes(n: int, edges: tuple) -> Iterator[SignedGraph]:
    base = SignedGraph.from_edges(n, edges)
    tree = {tuple(sorted((p, v))) for p, v in _bfs_forest(base) if p is not None}
    cotree = [e for e in edges if e not in tree]
    index = {e: i for i, e in enumerate(cotree)}
    auts = automorphisms(n, edges)
    seen = bytearray(1 << len(cotree))
    for mask in range(1 << len(cotree)):
        if seen[mask]:
            continue
        S = SignedGraph.from_edges(
            n,
            [e for e in edges if e in tree or not mask >> index[e] & 1],
            [e for e in cotree if mask >> index[e] & 1],
        )
        for perm in auts:
            img = canonical_switch_form(relabel(S, perm))
            m2 = sum(1 << index[e] for e in img.neg_edges)
            seen[m2] = 1
        yield S  # smallest mask in its orbit; already positive on the forest


def _isomorphism_classes(n: int, edges: tuple) -> Iterator[SignedGraph]:
    auts = automorphisms(n, edges)
    index = {e: i for i, e in enumerate(edges)}
    seen = bytearray(1 << len(edges))
    for mask in range(1 << len(edges)):
        if seen[mask]:
            continue
        neg = [e for e in edges if mask >> index[e] & 1]
        S = SignedGraph.from_edges(n, [e for e in edges if e not in set(neg)], neg)
        for perm in auts:
            img = relabel(S, perm)
            seen[sum(1 << index[e] for e in img.neg_edges)] = 1
        yield S


def enumerate_signed(spec: EnumerationSpec) -> Iterator[SignedGraph]:
    """One representative per class, ordered by vertex count, atlas graph, sign mask."""
    classes = _switching_classes if spec.dedup == "switching" else _isomorphism_classes
    for n in range(spec.min_n, spec.max_n + 1):
        for edges in unsigned_graphs(n, spec.connected):
            for S in classes(n, edges):
                if spec.accepts(S):
                    yield S


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Iterable) -> list:
    """Order-preserving map over a thread pool sized by HOFFSIGN_WORKERS."""
    items = list(items)
    k = worker_count()
    if k == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items))

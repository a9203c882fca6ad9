"""Brute-force reference implementations used only by the tests."""
import itertools

import numpy as np

from hoffsign.sigraph import SignedGraph


def _perms(n):
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)


def _signs(n):
    # vertex 0 may stay fixed: switching W and its complement agree
    rows = [(1,) + s for s in itertools.product((1, -1), repeat=max(n - 1, 0))]
    return np.array(rows, dtype=np.int64).reshape(-1, n) if n else np.ones((1, 0), dtype=np.int64)


def brute_switching_equivalent(S1: SignedGraph, S2: SignedGraph) -> bool:
    """Try every relabelling and every switching set."""
    if S1.n != S2.n:
        return False
    n = S1.n
    if n == 0:
        return True
    A = S1.adjacency_matrix().astype(np.int64)
    B = S2.adjacency_matrix().astype(np.int64)
    P = _perms(n)
    # Bp[k] is B read through permutation k, i.e. Bp[k][i, j] = B[p(i), p(j)]
    Bp = B[P[:, :, None], P[:, None, :]]
    keep = np.all(np.abs(Bp) == np.abs(A), axis=(1, 2))
    if not keep.any():
        return False
    s = _signs(n)
    SAS = s[:, :, None] * A[None] * s[:, None, :]
    return bool(np.any(np.all(Bp[keep][:, None] == SAS[None], axis=(2, 3))))


def brute_class_counts(n: int, keep=None) -> tuple[int, int]:
    """(connected, all) switching-isomorphism class counts by union-find over 3^pairs labelled graphs.

    Orbits are generated by adjacent transpositions and single-vertex switchings.
    ``keep`` filters graphs by a switching-isomorphism invariant predicate.
    """
    from hoffsign.sigraph import is_connected

    pairs = list(itertools.combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    total = 3 ** len(pairs)
    weights = [3**i for i in range(len(pairs))]
    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = []
    for a in range(n - 1):
        perm = list(range(n))
        perm[a], perm[a + 1] = a + 1, a
        gens.append([index[tuple(sorted((perm[u], perm[v])))] for u, v in pairs])
    flips = [[v in p for p in pairs] for v in range(n)]
    decoded = []
    for c in range(total):
        signs, r = [], c
        for _ in pairs:
            signs.append(r % 3 - 1)
            r //= 3
        decoded.append(signs)
        for g in gens:
            img = sum((signs[g[i]] + 1) * w for i, w in enumerate(weights))
            parent[find(c)] = find(img)
        for fl in flips:
            img = sum(((-s if f else s) + 1) * w for s, f, w in zip(signs, fl, weights))
            parent[find(c)] = find(img)
    conn, every = set(), set()
    for c, signs in enumerate(decoded):
        root = find(c)
        G = SignedGraph.from_signed_edges(n, [(u, v, s) for (u, v), s in zip(pairs, signs) if s])
        if keep is not None and not keep(G):
            continue
        every.add(root)
        if is_connected(G):
            conn.add(root)
    return len(conn), len(every)

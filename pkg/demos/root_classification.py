"""
Signed graphs above -2 and their root representations
=====================================================

A connected signed graph with smallest eigenvalue above -2 is, up to
switching, the signed line graph of a tree, an odd or even unicyclic graph,
or a tree with one double edge, unless it only embeds in E8.
"""

import numpy as np

from hoffsign.lines import Multigraph, line_signed_graph, signed_incidence
from hoffsign.rootrep import classify, corollary14_check, reconstruct
from hoffsign.sigraph import SignedGraph

# build a signed graph from a unicyclic multigraph and classify it back
H = Multigraph(5, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4)])
S = reconstruct(H)
v = classify(S, alternatives=True)
print("tag:", v.tag.name, " representation graph edges:", v.rep_graph.edges)
print("witness replays:", v.witness.apply(S) == v.reconstruction)
print("alternatives:", [(t.name, G.edges) for t, G in v.alternatives])

# deleting one vertex leaves a line graph of a tree
res = corollary14_check(S, v)
print("removed vertex:", res.removed, " tree edges:", res.tree.edges)

# the signed line graph has Gram form B^T B - 2I
T = SignedGraph.cycle(4, negative=[3])
B = signed_incidence(T)
print("B^T B - 2I:\n", B.T @ B - 2 * np.eye(B.shape[1], dtype=int))
print("line graph adjacency:\n", line_signed_graph(T).adjacency_matrix())

# an exceptional example: the E6 Dynkin diagram
E6 = SignedGraph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
print("E6:", classify(E6).tag.name)

"""
Spectra of small signed graphs
==============================

Exact characteristic polynomials, root counts below algebraic thresholds,
and how switching leaves the spectrum alone.
"""

import numpy as np

from hoffsign.sigraph import SignedGraph, switch, switching_equivalent
from hoffsign.spectra import AlgebraicThreshold, approx_spectrum, char_poly, count_roots_below, lambda_min_cmp

# a 5-cycle with one negative edge is unbalanced
C5 = SignedGraph.cycle(5, negative=[0])
print("char poly of C5 with one negative edge:", char_poly(C5))
print("eigenvalues:", np.round(np.linalg.eigvalsh(C5.adjacency_matrix()), 6))

# exact comparison of the smallest eigenvalue against -2 and -sqrt(2)
for t in ("-2", "-sqrt2"):
    print(f"lambda_min vs {t}:", lambda_min_cmp(C5, t).name)

# switching a vertex set flips the edges leaving it; the spectrum does not move
S = switch(C5, {1, 2})
print("switched negative edges:", sorted(S.neg_edges))
print("same char poly:", char_poly(S) == char_poly(C5))
w = switching_equivalent(C5, S)
print("witness replays:", w.apply(C5) == S)

# exact root counts agree with floating enclosures
A = SignedGraph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], [(0, 1)]).adjacency_matrix()
spec = approx_spectrum(A, tol=1e-9)
p = char_poly(A)
for t in ("-2", "-sqrt2", "-1", "0"):
    thr = AlgebraicThreshold.of(t)
    print(f"roots below {t}: exact {count_roots_below(p, thr)}, enclosures {spec.count_below(thr)}")

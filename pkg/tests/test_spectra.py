from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from hoffsign.polynomial import Poly, gcd, squarefree_decomposition, sturm_chain
from hoffsign.sigraph import SignedGraph, switch
from hoffsign.spectra import (
    AlgebraicThreshold,
    Cmp,
    PsdClass,
    approx_spectrum,
    char_poly,
    count_roots_below,
    is_psd_shifted,
    jacobi_eigenvalues,
    lambda_min_cmp,
    multiplicity_at,
    psd_class,
)

from conftest import graph_and_subset, signed_graphs

X = sp.symbols("x")

# char polys frozen from sympy's Matrix.charpoly
C5_TWO_NEG = [[0, -1, 0, 0, 1], [-1, 0, -1, 0, 0], [0, -1, 0, 1, 0], [0, 0, 1, 0, 1], [1, 0, 0, 1, 0]]
C4_ONE_NEG = [[0, 1, 0, -1], [1, 0, 1, 0], [0, 1, 0, 1], [-1, 0, 1, 0]]


def coeffs_high_first(p):
    return list(reversed(p.coeffs))


def test_char_poly_frozen():
    assert coeffs_high_first(char_poly(C5_TWO_NEG)) == [1, 0, -5, 0, 5, -2]
    assert coeffs_high_first(char_poly(C4_ONE_NEG)) == [1, 0, -4, 0, 4]
    assert coeffs_high_first(char_poly(SignedGraph.complete(4))) == [1, 0, -6, -8, -3]
    assert coeffs_high_first(char_poly(SignedGraph.path(3))) == [1, 0, -2, 0]


@given(signed_graphs(max_n=6))
def test_char_poly_matches_sympy(S):
    A = S.adjacency_matrix()
    ref = sp.Poly(sp.Matrix(A.tolist()).charpoly(X).as_expr(), X).all_coeffs()
    assert coeffs_high_first(char_poly(A)) == [int(c) for c in ref]


def test_char_poly_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        char_poly([[0, 1], [0, 0]])
    assert coeffs_high_first(char_poly([[0, 1], [0, 0]], symmetric=False)) == [1, 0, 0]


def test_threshold_parse_and_normalize():
    t = AlgebraicThreshold.parse("-sqrt2")
    assert (t.p, t.q, t.r, t.d) == (0, -1, 1, 2)
    assert AlgebraicThreshold.parse("-3/2") == AlgebraicThreshold(-3, 0, 2, 0)
    assert AlgebraicThreshold.parse("2*sqrt(8)") == AlgebraicThreshold(0, 4, 1, 2)
    assert AlgebraicThreshold.sqrt(4) == AlgebraicThreshold.of(2)
    assert float(AlgebraicThreshold.parse("(1-sqrt17)/2")) == pytest.approx((1 - 17**0.5) / 2)
    with pytest.raises(ValueError):
        AlgebraicThreshold.parse("two")


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 20), st.integers(2, 30), st.fractions(max_denominator=30))
def test_threshold_sign_minus(p, q, r, d, x):
    t = AlgebraicThreshold(p, q, r, d)
    exact = sp.nsimplify(sp.Rational(p, r) + sp.Rational(q, r) * sp.sqrt(d) - sp.Rational(x.numerator, x.denominator))
    assert t.sign_minus(x) == int(sp.sign(exact))


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5), st.integers(-9, 9), st.integers(1, 5), st.integers(2, 13))
def test_threshold_sign_of_poly(cs, p, r, d):
    poly = Poly(cs)
    t = AlgebraicThreshold(p, 1, r, d)
    val = sum(c * (sp.Rational(p, r) + sp.sqrt(d) / r) ** k for k, c in enumerate(cs))
    assert t.sign_of_poly(poly) == int(sp.sign(sp.nsimplify(sp.expand(val))))


def test_poly_gcd_and_squarefree():
    p = Poly.from_high_first([1, 0, -4, 0, 4])  # (x^2-2)^2
    parts = squarefree_decomposition(p)
    assert [(k, coeffs_high_first(f)) for f, k in parts if f.degree > 0] == [(2, [1, 0, -2])]
    g = gcd(Poly.from_high_first([1, -3, 2]), Poly.from_high_first([1, -1]))
    assert coeffs_high_first(g.primitive()) in ([1, -1], [-1, 1])
    assert len(sturm_chain(Poly.from_high_first([1, 0, -2]))) == 3


def test_root_counts_and_multiplicity():
    p = char_poly(C4_ONE_NEG)  # roots +-sqrt2 twice each
    s2 = AlgebraicThreshold.sqrt(2)
    assert count_roots_below(p, -s2) == 0
    assert count_roots_below(p, 0) == 2
    assert multiplicity_at(p, -s2) == 2
    assert multiplicity_at(p, -1) == 0


def test_lambda_min_cmp_examples():
    assert lambda_min_cmp(C4_ONE_NEG, AlgebraicThreshold.sqrt(2, -1)) is Cmp.EQUAL
    assert lambda_min_cmp(SignedGraph.complete(5), -1) is Cmp.EQUAL
    assert lambda_min_cmp(SignedGraph.complete(5), "-sqrt2") is Cmp.GREATER
    assert lambda_min_cmp(SignedGraph.complete(4, -1), -2) is Cmp.LESS
    # every odd-odd cycle sits at -2
    assert lambda_min_cmp(SignedGraph.cycle(5, negative=[0]), -2) is Cmp.EQUAL


@given(graph_and_subset(max_n=6))
def test_switching_preserves_char_poly(arg):
    S, W = arg
    assert char_poly(S) == char_poly(switch(S, W))


@given(signed_graphs(max_n=6), st.sampled_from(["-2", "-sqrt2", "-1", "0", "-7/4"]))
def test_lambda_min_cmp_agrees_with_eigvalsh(S, t):
    lam = np.linalg.eigvalsh(S.adjacency_matrix().astype(float))[0] if S.n else 0.0
    c = lambda_min_cmp(S, t)
    tv = float(AlgebraicThreshold.of(t))
    if c is Cmp.LESS:
        assert lam < tv + 1e-9
    elif c is Cmp.GREATER:
        assert lam > tv - 1e-9
    else:
        assert lam == pytest.approx(tv, abs=1e-9)


def test_psd_class():
    assert psd_class([[2, -1], [-1, 2]]) is PsdClass.PD
    assert psd_class([[1, 1], [1, 1]]) is PsdClass.PSD_SINGULAR
    assert psd_class([[0, 1], [1, 0]]) is PsdClass.NOT_PSD
    assert is_psd_shifted(SignedGraph.cycle(5, negative=[0])) is PsdClass.PSD_SINGULAR
    assert is_psd_shifted(SignedGraph.complete(4, -1)) is PsdClass.NOT_PSD
    assert psd_class([[0, 1], [1, 0]], shift=1) is PsdClass.PSD_SINGULAR


@given(signed_graphs(max_n=7))
def test_jacobi_matches_eigvalsh(S):
    A = S.adjacency_matrix().astype(float)
    ref = np.linalg.eigvalsh(A) if S.n else np.zeros(0)
    assert np.allclose(np.sort(jacobi_eigenvalues(S.adjacency_matrix())), ref, atol=1e-9)


@given(signed_graphs(max_n=6))
def test_approx_spectrum_enclosures(S):
    spec = approx_spectrum(S.adjacency_matrix(), tol=1e-9)
    assert len(spec.eigenvalues) == len(spec.certified_bounds) == S.n
    for x, (lo, hi) in zip(spec.eigenvalues, spec.certified_bounds):
        assert hi - lo <= Fraction(1e-9)
        assert float(lo) - 1e-9 <= x <= float(hi) + 1e-9


def test_approx_spectrum_rejects_bad_tol():
    with pytest.raises(ValueError):
        approx_spectrum([[0]], tol=0)

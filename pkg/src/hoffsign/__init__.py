"""Exact spectral tools for signed graphs and Hoffman signed graphs."""
from .sigraph import SignedGraph, SwitchWitness, switch, canonical_switch_form, switching_equivalent
from .spectra import AlgebraicThreshold, Cmp, PsdClass, char_poly, lambda_min_cmp, approx_spectrum
from .hoffman import HoffmanSGraph, CATALOG, b_matrix, hoffman_eigen_min

__version__ = "0.1.0"

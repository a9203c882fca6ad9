"""Blow-ups G(h, t), the block matrices A_t and their smallest-eigenvalue limits.

A_t has blocks ``[[A, L (x) 1_t^T], [L^* (x) 1_t, D (x) (J_t - I_t)]]``.  Its
smallest eigenvalue is the minimum of the smallest root of the quotient matrix
``[[A, tL], [L^*, (t-1)D]]`` and ``-mu`` (the smallest eigenvalue of D, present
once t >= 2).  As t grows the first tends to lambda_min(A - L D^{-1} L^*), so
the limit of lambda_min(A_t) is the smaller of that Schur-complement value and
``-mu``.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .hoffman import CATALOG, HoffmanSGraph
from .sigraph import SignedGraph
from .spectra import (
    AlgebraicThreshold,
    PsdClass,
    Threshold,
    char_poly,
    count_roots_below,
    psd_class,
)

__all__ = [
    "BlockSpec",
    "ConvergenceReport",
    "D0_DEFAULT",
    "DEFAULT_SCHEDULE",
    "blow_up",
    "build_At",
    "f_value",
    "hoffman_blocks",
    "lambda_min_At",
    "lemma59c_bound",
    "lemma59c_estimate",
    "lemma59c_matrix",
    "limit_experiment",
    "n0_for",
    "quotient_matrix",
    "real_embedding",
]

DEFAULT_SCHEDULE = (1, 2, 4, 8, 16, 32, 64)
# Upper bound on the minimum degree of exceptional graphs.  Configuration only:
# the value is not derived, the existence of such a bound is all that is known.
D0_DEFAULT = 16
SCHEMA_VERSION = 1


def _as_matrix(x, rows: Optional[int] = None, cols: Optional[int] = None) -> np.ndarray:
    a = np.asarray(x)
    if a.size == 0:
        return np.zeros((rows or 0, cols or 0), dtype=a.dtype if a.dtype != object else float)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a


def _is_integer_real(a: np.ndarray) -> bool:
    return not np.iscomplexobj(a) and np.array_equal(a, np.round(a))


@dataclass(frozen=True)
class BlockSpec:
    """Hermitian A (m x m), L (m x n), Hermitian positive definite D (n x n)."""

    A: np.ndarray
    L: np.ndarray
    D: np.ndarray
    t: Optional[int] = None

    def __post_init__(self):
        D = _as_matrix(self.D)
        n = D.shape[0]
        A = _as_matrix(self.A)
        m = A.shape[0]
        L = _as_matrix(self.L, m, n)
        if A.shape != (m, m) or D.shape != (n, n) or L.shape != (m, n):
            raise ValueError(f"inconsistent block shapes A{A.shape} L{L.shape} D{D.shape}")
        for name, M in (("A", A), ("D", D)):
            if not np.allclose(M, M.conj().T, atol=0):
                raise ValueError(f"{name} must be Hermitian")
        if n and not _is_positive_definite(D):
            raise ValueError("D must be positive definite")
        if self.t is not None and int(self.t) < 1:
            raise ValueError("t must be a positive integer")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "D", D)

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.D.shape[0]

    @property
    def is_complex(self) -> bool:
        return any(np.iscomplexobj(M) and np.any(np.imag(M) != 0) for M in (self.A, self.L, self.D))

    def with_t(self, t: int) -> "BlockSpec":
        return BlockSpec(self.A, self.L, self.D, t)

    def mu(self) -> float:
        """Smallest eigenvalue of D."""
        return float(_eigvalsh_hermitian(self.D)[0])

    def mu_max(self) -> float:
        """Largest eigenvalue of D."""
        return float(_eigvalsh_hermitian(self.D)[-1])

    def ell(self) -> float:
        """Largest eigenvalue of L^* L."""
        if self.L.size == 0:
            return 0.0
        return float(np.linalg.eigvalsh(self.L.conj().T @ self.L)[-1])

    def schur_target(self) -> Optional[float]:
        """lambda_min(A - L D^{-1} L^*), or None when A is empty."""
        if self.m == 0:
            return None
        S = self.A - self.L @ np.linalg.solve(self.D, self.L.conj().T) if self.n else self.A
        return _lambda_min_hermitian(S)

    def limit_value(self) -> Optional[float]:
        """The actual limit of lambda_min(A_t): min(schur_target, -mu_max).

        For t >= 2 the spectrum of A_t is that of quotient_matrix(t) together
        with -mu for every eigenvalue mu of D, so the Schur-complement value is
        the limit only when it lies below -mu_max.
        """
        cands = []
        s = self.schur_target()
        if s is not None:
            cands.append(s)
        if self.n:
            cands.append(-self.mu_max())
        return min(cands) if cands else None

    def lower_bound(self) -> Optional[float]:
        """min(lambda_min(A) - 2 ell, -mu) with mu the smallest eigenvalue of D.

        This is the bound as usually stated; it fails for t >= 2 when -mu_max
        drops below it.  ``lower_bound_corrected`` holds for every t.
        """
        cands = []
        if self.m:
            cands.append(_lambda_min_hermitian(self.A) - 2 * self.ell())
        if self.n:
            cands.append(-self.mu())
        return min(cands) if cands else None

    def lower_bound_corrected(self) -> Optional[float]:
        """min(lambda_min(A) - 2 ell, -mu_max), valid for every t."""
        cands = []
        if self.m:
            cands.append(_lambda_min_hermitian(self.A) - 2 * self.ell())
        if self.n:
            cands.append(-self.mu_max())
        return min(cands) if cands else None


def _is_positive_definite(D: np.ndarray) -> bool:
    # exact for (Gaussian) integer entries via the real embedding
    E = real_embedding(D) if np.iscomplexobj(D) else np.asarray(D)
    if np.array_equal(E, np.round(E)):
        return psd_class(np.round(E).astype(np.int64)) is PsdClass.PD
    w = np.linalg.eigvalsh(E)
    return bool(w[0] > 1e-12 * max(1.0, abs(w[-1])))


def real_embedding(M: np.ndarray) -> np.ndarray:
    """[[Re, -Im], [Im, Re]]: real symmetric, spectrum of M with doubled multiplicities."""
    re, im = np.real(M), np.imag(M)
    return np.block([[re, -im], [im, re]])


def _eigvalsh_hermitian(M: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(M) and np.any(np.imag(M) != 0):
        M = real_embedding(M)
    return np.linalg.eigvalsh(np.real(M))


def _lambda_min_hermitian(M: np.ndarray) -> float:
    return float(_eigvalsh_hermitian(M)[0])


def build_At(spec: BlockSpec, t: Optional[int] = None) -> np.ndarray:
    """The (m + n t)-square Hermitian block matrix A_t."""
    t = spec.t if t is None else t
    if t is None or int(t) < 1:
        raise ValueError("t must be a positive integer")
    t = int(t)
    ones = np.ones((1, t), dtype=np.int64)
    J_I = np.ones((t, t), dtype=np.int64) - np.eye(t, dtype=np.int64)
    top_right = np.kron(spec.L, ones)
    bottom = np.kron(spec.D, J_I)
    return np.block([[spec.A, top_right], [top_right.conj().T, bottom]])


def lambda_min_At(spec: BlockSpec, t: int) -> float:
    return _lambda_min_hermitian(build_At(spec, t))


def quotient_matrix(spec: BlockSpec, t: int) -> np.ndarray:
    """[[A, tL], [L^*, (t-1)D]]; its eigenvalues are those of A_t on block-constant vectors."""
    return np.block([[spec.A, t * spec.L], [spec.L.conj().T, (t - 1) * spec.D]])


def blow_up(h: HoffmanSGraph, t: int) -> SignedGraph:
    """Replace every fat vertex by a positive clique K_t.

    Slim vertices come first in their original order, followed by t copies of
    each fat vertex in turn.
    """
    if int(t) < 1:
        raise ValueError("t must be a positive integer")
    t = int(t)
    slim, fat = h.slim, h.fat
    index = {x: i for i, x in enumerate(slim)}
    base = len(slim)
    copies = {F: [base + j * t + k for k in range(t)] for j, F in enumerate(fat)}
    pos, neg = [], []
    for u, v, s in h.graph.edges():
        if u in index and v in index:
            (pos if s > 0 else neg).append((index[u], index[v]))
        else:
            x, F = (u, v) if u in index else (v, u)
            for c in copies[F]:
                (pos if s > 0 else neg).append((index[x], c))
    for F in fat:
        cs = copies[F]
        pos += [(cs[i], cs[j]) for i in range(t) for j in range(i + 1, t)]
    return SignedGraph.from_edges(base + t * len(fat), pos, neg)


def hoffman_blocks(h: HoffmanSGraph) -> BlockSpec:
    """A = slim adjacency, L = slim-to-fat signs, D = I."""
    A = h.graph.adjacency_matrix()
    return BlockSpec(
        A[np.ix_(h.slim, h.slim)],
        A[np.ix_(h.slim, h.fat)],
        np.eye(len(h.fat), dtype=np.int64),
    )


@dataclass
class ConvergenceReport:
    t_values: list
    lambda_min: list
    target: Optional[float]
    limit: Optional[float]
    lower_bound: Optional[float]
    tol: float = 1e-9
    meta: dict = field(default_factory=dict)
    lower_bound_corrected: Optional[float] = None

    @property
    def monotone(self) -> bool:
        return all(b <= a + self.tol for a, b in zip(self.lambda_min, self.lambda_min[1:]))

    @property
    def above_limit(self) -> bool:
        return self.limit is None or all(x >= self.limit - self.tol for x in self.lambda_min)

    @property
    def above_target(self) -> bool:
        return self.target is None or all(x >= self.target - self.tol for x in self.lambda_min)

    @property
    def above_lower_bound(self) -> bool:
        return self.lower_bound is None or all(x >= self.lower_bound - self.tol for x in self.lambda_min)

    @property
    def above_corrected_bound(self) -> bool:
        lb = self.lower_bound_corrected
        return lb is None or all(x >= lb - self.tol for x in self.lambda_min)

    @property
    def target_is_limit(self) -> bool:
        """False when -mu lies below the Schur-complement value, which then is not the limit."""
        if self.target is None or self.limit is None:
            return self.target is None and self.limit is None
        return self.target <= self.limit + self.tol

    @property
    def gaps(self) -> list:
        ref = self.limit
        return [x - ref for x in self.lambda_min] if ref is not None else []

    @property
    def final_gap(self) -> Optional[float]:
        """Distance from the last value to the Schur-complement target."""
        return None if self.target is None else self.lambda_min[-1] - self.target

    @property
    def final_gap_to_limit(self) -> Optional[float]:
        return None if self.limit is None else self.lambda_min[-1] - self.limit

    @property
    def gaps_decreasing(self) -> bool:
        g = self.gaps
        return all(b <= a + self.tol for a, b in zip(g, g[1:]))

    @property
    def ok(self) -> bool:
        return self.monotone and self.above_limit and self.above_lower_bound and self.above_corrected_bound

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "target": self.target,
            "limit": self.limit,
            "lower_bound": self.lower_bound,
            "points": [{"t": t, "lambda_min": x} for t, x in zip(self.t_values, self.lambda_min)],
            "monotone": self.monotone,
            "above_limit": self.above_limit,
            "above_lower_bound": self.above_lower_bound,
            "lower_bound_corrected": self.lower_bound_corrected,
            "above_corrected_bound": self.above_corrected_bound,
            "target_is_limit": self.target_is_limit,
            "final_gap": self.final_gap,
            "final_gap_to_limit": self.final_gap_to_limit,
            **({"meta": self.meta} if self.meta else {}),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "lambda_min", "target"])
        tgt = "" if self.target is None else f"{self.target:.12g}"
        for t, x in zip(self.t_values, self.lambda_min):
            w.writerow([t, f"{x:.12g}", tgt])
        return buf.getvalue()


def limit_experiment(
    spec, schedule: Sequence[int] = DEFAULT_SCHEDULE, tol: float = 1e-9
) -> ConvergenceReport:
    """lambda_min(A_t) along ``schedule`` with the Schur target, true limit and lower bound.

    ``spec`` is a BlockSpec or a HoffmanSGraph (blown up with D = I).
    """
    if isinstance(spec, HoffmanSGraph):
        spec = hoffman_blocks(spec)
    ts = [int(t) for t in schedule]
    if not ts or any(t < 1 for t in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("schedule must be a nonempty increasing list of positive integers")
    values = [lambda_min_At(spec, t) for t in ts]
    return ConvergenceReport(
        ts,
        values,
        spec.schur_target(),
        spec.limit_value(),
        spec.lower_bound(),
        tol,
        lower_bound_corrected=spec.lower_bound_corrected(),
    )


# ---------------------------------------------------------------------------
# The bound used to keep lambda_min(A_t) away from -infinity

def _scalar(s) -> float:
    if isinstance(s, (AlgebraicThreshold, str)):
        return float(AlgebraicThreshold.of(s))
    return float(s)


def lemma59c_matrix(s, L, D) -> np.ndarray:
    s = _scalar(s)
    L = np.atleast_2d(np.asarray(L))
    D = np.atleast_2d(np.asarray(D))
    m = L.shape[0]
    return np.block([[np.zeros((m, m)), s * L], [s * L.conj().T, (s * s - 1) * D]])


def lemma59c_bound(s, L, D) -> bool:
    """Is lambda_min([[0, sL], [sL^*, (s^2-1)D]]) > -2 lambda_max(L^* L)?

    For L = 0 both sides are 0, so the comparison is made non-strict there.
    """
    sv = _scalar(s)
    if isinstance(s, (AlgebraicThreshold, str)):
        ok = AlgebraicThreshold.of(s).sign_minus(0) >= 0 and _exact_square_at_least_2(AlgebraicThreshold.of(s))
    else:
        ok = sv >= math.sqrt(2)
    if not ok:
        raise ValueError("s must be at least sqrt(2)")
    L = np.atleast_2d(np.asarray(L))
    D = np.atleast_2d(np.asarray(D))
    if not _is_positive_definite(D) or not np.allclose(D, D.conj().T, atol=0):
        raise ValueError("D must be Hermitian positive definite")
    lam = _lambda_min_hermitian(lemma59c_matrix(sv, L, D))
    ell = float(np.linalg.eigvalsh(L.conj().T @ L)[-1]) if L.size else 0.0
    if not np.any(L):
        return lam >= -2 * ell
    return lam > -2 * ell


def lemma59c_estimate(s, L, D) -> float:
    """Lower bound on lambda_min of the lemma59c block matrix from the Schur complement.

    For lambda < 0 the shifted block [[-lambda I, sL], [sL^*, (s^2-1)D - lambda I]]
    is PSD once lambda^2 - a lambda - s^2 ell >= 0 with a = (s^2-1) mu_min(D), so
    lambda_min is at least the negative root
        -2 s^2 ell / (a + sqrt(a^2 + 4 s^2 ell)).
    This exceeds -2 ell whenever mu_min(D) >= 1, but not in general: the bare
    lemma59c_bound fails for some D with mu_min(D) < 1.
    """
    sv = _scalar(s)
    L = np.atleast_2d(np.asarray(L))
    D = np.atleast_2d(np.asarray(D))
    ell = float(_eigvalsh_hermitian(L.conj().T @ L)[-1]) if L.size else 0.0
    a = (sv * sv - 1) * float(_eigvalsh_hermitian(D)[0])
    if ell == 0:
        return min(0.0, a)
    return -2 * sv * sv * ell / (a + math.sqrt(a * a + 4 * sv * sv * ell))


def _exact_square_at_least_2(s: AlgebraicThreshold) -> bool:
    # s >= sqrt(2) with s >= 0 is s^2 - 2 >= 0
    from .polynomial import Poly

    return s.sign_of_poly(Poly((-2, 0, 1))) >= 0


# ---------------------------------------------------------------------------
# n0 and f

_N0_GRAPHS = ("h2", "h3", "h4")
_T_CAP = 1 << 40


def _below(h: HoffmanSGraph, t: int, lam: AlgebraicThreshold) -> bool:
    """Exact test lambda_min(G(h, t)) < lam for -2 < lam < -1.

    The remaining eigenvalues of G(h, t) are -1 (and 0 or slim-only ones,
    which the quotient matrix also carries), all above lam.
    """
    Q = quotient_matrix(hoffman_blocks(h), t).astype(object)
    return count_roots_below(char_poly(Q, symmetric=False), lam) > 0


def _first_crossing(h: HoffmanSGraph, lam: AlgebraicThreshold) -> int:
    if _below(h, 1, lam):
        return 1
    lo, hi = 1, 2
    while not _below(h, hi, lam):
        lo, hi = hi, hi * 2
        if hi > _T_CAP:
            raise RuntimeError("blow-up size cap exceeded")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _below(h, mid, lam):
            hi = mid
        else:
            lo = mid
    return hi


def n0_for(lam: Threshold) -> int:
    """Smallest t with lambda_min(G(h_i, t)) < lam for i = 2, 3, 4."""
    lam = AlgebraicThreshold.of(lam)
    if not (lam.sign_minus(-2) > 0 and lam.sign_minus(-1) < 0):
        raise ValueError(f"lambda must lie strictly between -2 and -1, got {lam}")
    return max(_first_crossing(CATALOG[name], lam) for name in _N0_GRAPHS)


def f_value(lam: Threshold, d0: int = D0_DEFAULT) -> int:
    """max(2 n0, d0) + 1."""
    return max(2 * n0_for(lam), int(d0)) + 1

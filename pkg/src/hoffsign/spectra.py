"""Exact and floating eigenvalue machinery for integer symmetric matrices.

The exact path works over Python integers and rationals: characteristic
polynomials by Hessenberg reduction, Sturm sequences for root counting, and
exact sign evaluation at quadratic irrationals ``(p + q*sqrt(d)) / r``.  The
floating path (cyclic Jacobi) is a cross-check whose output is certified
against the exact root counts.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from .polynomial import (
    Poly,
    sign_variations,
    squarefree_decomposition,
    sturm_chain,
)

__all__ = [
    "AlgebraicThreshold",
    "CharPoly",
    "Cmp",
    "PsdClass",
    "Spectrum",
    "approx_spectrum",
    "as_int_matrix",
    "char_poly",
    "count_roots_below",
    "jacobi_eigenvalues",
    "lambda_min_cmp",
    "is_psd_shifted",
    "multiplicity_at",
    "psd_class",
]


class Cmp(enum.Enum):
    LESS = "LESS"
    EQUAL = "EQUAL"
    GREATER = "GREATER"


class PsdClass(enum.Enum):
    PD = "PD"
    PSD_SINGULAR = "PSD_SINGULAR"
    NOT_PSD = "NOT_PSD"


def _squarefree_int(d: int) -> tuple[int, int]:
    """Return (k, e) with d = k**2 * e and e squarefree."""
    k, e = 1, d
    f = 2
    while f * f <= e:
        while e % (f * f) == 0:
            e //= f * f
            k *= f
        f += 1
    return k, e


def _sign_quadratic(u, v, d: int) -> int:
    """Sign of u + v*sqrt(d) for rationals u, v and squarefree d > 1."""
    su = (u > 0) - (u < 0)
    sv = (v > 0) - (v < 0)
    if sv == 0:
        return su
    if su == 0 or su == sv:
        return sv
    # opposite signs: compare magnitudes through squares
    return su if u * u > v * v * d else sv


_THRESHOLD_RE = re.compile(
    r"""^\s*
    (?P<open>\()?\s*
    (?P<rat>[+-]?\s*\d+(?:\.\d+)?(?:/\d+)?)?\s*
    (?:(?P<sgn>[+-])?\s*(?P<coef>\d+)?\s*\*?\s*sqrt\s*\(?\s*(?P<d>\d+)\s*\)?\s*(?:/\s*(?P<r>\d+))?)?
    \s*(?(open)\)\s*(?:/\s*(?P<outer>\d+))?)
    \s*$""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class AlgebraicThreshold:
    """The real number (p + q*sqrt(d)) / r, kept in lowest terms.

    ``d`` is squarefree (or 0 for rationals), ``r > 0``.
    """

    p: int
    q: int = 0
    r: int = 1
    d: int = 0

    def __post_init__(self):
        p, q, r, d = int(self.p), int(self.q), int(self.r), int(self.d)
        if r == 0:
            raise ValueError("denominator r must be nonzero")
        if d < 0:
            raise ValueError("d must be nonnegative")
        if r < 0:
            p, q, r = -p, -q, -r
        if d in (0, 1) or q == 0:
            p, q, d = p + (q if d == 1 else 0), 0, 0
        else:
            k, d = _squarefree_int(d)
            q *= k
            if d == 1:
                p, q, d = p + q, 0, 0
        g = math.gcd(math.gcd(p, q), r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "d", d)

    @classmethod
    def of(cls, value) -> "AlgebraicThreshold":
        if isinstance(value, AlgebraicThreshold):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, float):
            value = Fraction(value)
        fr = Fraction(value)
        return cls(fr.numerator, 0, fr.denominator, 0)

    @classmethod
    def sqrt(cls, d: int, coef: Union[int, Fraction] = 1) -> "AlgebraicThreshold":
        """coef * sqrt(d)."""
        c = Fraction(coef)
        return cls(0, c.numerator, c.denominator, d)

    @classmethod
    def parse(cls, text: str) -> "AlgebraicThreshold":
        """Parse forms like ``-3/2``, ``-sqrt2``, ``-7/5+sqrt(2)/10``, ``(1-sqrt17)/2``."""
        m = _THRESHOLD_RE.match(text)
        if not m or (m.group("rat") is None and m.group("d") is None):
            raise ValueError(f"cannot parse threshold {text!r}")
        rat = Fraction(m.group("rat").replace(" ", "")) if m.group("rat") else Fraction(0)
        if m.group("d") is not None:
            coef = Fraction(int(m.group("coef") or 1), int(m.group("r") or 1))
            if m.group("sgn") == "-":
                coef = -coef
            elif m.group("sgn") is None and m.group("rat") is not None:
                # "2*sqrt(3)": the leading number is the coefficient
                if m.group("coef") is not None:
                    raise ValueError(f"cannot parse threshold {text!r}")
                coef, rat = rat / int(m.group("r") or 1), Fraction(0)
        else:
            coef = Fraction(0)
        outer = int(m.group("outer") or 1)
        rat /= outer
        coef /= outer
        den = rat.denominator * coef.denominator // math.gcd(rat.denominator, coef.denominator)
        return cls(int(rat * den), int(coef * den), den, int(m.group("d") or 0))

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def rational(self) -> Fraction:
        if self.q:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.p, self.r)

    def __float__(self) -> float:
        return (self.p + self.q * math.sqrt(self.d)) / self.r

    def __neg__(self) -> "AlgebraicThreshold":
        return AlgebraicThreshold(-self.p, -self.q, self.r, self.d)

    def __str__(self) -> str:
        if self.q == 0:
            return str(Fraction(self.p, self.r))
        rad = f"sqrt({self.d})" if abs(self.q) == 1 else f"{abs(self.q)}*sqrt({self.d})"
        num = rad if self.p == 0 else f"{self.p}{'+' if self.q > 0 else '-'}{rad}"
        if self.p == 0 and self.q < 0:
            num = "-" + num
        if self.r == 1:
            return num
        return f"({num})/{self.r}" if self.p else f"{num}/{self.r}"

    def sign_minus(self, x) -> int:
        """Sign of self - x for a rational x."""
        x = Fraction(x)
        u = Fraction(self.p, self.r) - x
        if self.q == 0:
            return (u > 0) - (u < 0)
        return _sign_quadratic(u, Fraction(self.q, self.r), self.d)

    def sign_of_poly(self, poly: Poly) -> int:
        """Sign of poly evaluated at this number, computed exactly."""
        if poly.is_zero():
            return 0
        if self.q == 0:
            v = poly(Fraction(self.p, self.r))
            return (v > 0) - (v < 0)
        # r**deg * poly(alpha) = u + v*sqrt(d) with integers u, v (Horner)
        n = poly.degree
        u, v = poly.coeffs[n], 0
        rk = 1
        for k in range(n - 1, -1, -1):
            rk *= self.r
            u, v = u * self.p + v * self.q * self.d + poly.coeffs[k] * rk, u * self.q + v * self.p
        return _sign_quadratic(u, v, self.d)


Threshold = Union[AlgebraicThreshold, int, Fraction, str]


class CharPoly(Poly):
    """Monic integer characteristic polynomial det(xI - M)."""

    __slots__ = ()


def as_int_matrix(M) -> list[list[int]]:
    """Copy a square integer array-like into nested lists of Python ints."""
    if hasattr(M, "adjacency_matrix"):
        M = M.adjacency_matrix()
    rows = [[int(x) for x in row] for row in np.asarray(M).tolist()] if np.size(M) else []
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix must be square")
    return rows


def _check_symmetric(a: list[list[int]]) -> None:
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")


def char_poly(M, symmetric: bool = True) -> CharPoly:
    """det(xI - M) with exact integer coefficients.

    Uses similarity reduction to upper Hessenberg form over the rationals and
    the standard three-term-style recurrence for Hessenberg determinants.
    ``symmetric=False`` admits non-symmetric integer matrices (used for
    quotient matrices that are similar to symmetric ones).
    """
    a = as_int_matrix(M)
    if symmetric:
        _check_symmetric(a)
    n = len(a)
    h = [[Fraction(x) for x in row] for row in a]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1] != 0), None)
        if piv is None:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for row in h:
                row[piv], row[m] = row[m], row[piv]
        pivot = h[m][m - 1]
        for i in range(m + 1, n):
            f = h[i][m - 1] / pivot
            if f == 0:
                continue
            hi, hm = h[i], h[m]
            for j in range(m - 1, n):
                hi[j] -= f * hm[j]
            for row in h:
                row[m] += f * row[i]
    # p_k(x) for leading k x k block; polys as Fraction lists, low degree first
    polys: list[list[Fraction]] = [[Fraction(1)]]
    for k in range(n):
        cur = [Fraction(0)] + polys[k]
        hk = h[k][k]
        for i, c in enumerate(polys[k]):
            cur[i] -= hk * c
        prod = Fraction(1)
        for i in range(1, k + 1):
            prod *= h[k - i + 1][k - i]
            if prod == 0:
                break
            coef = h[k - i][k] * prod
            if coef:
                for j, c in enumerate(polys[k - i]):
                    cur[j] -= coef * c
        polys.append(cur)
    coeffs = polys[n]
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("non-integral characteristic polynomial")
    return CharPoly(int(c) for c in coeffs)


def _count_distinct_below(chain: list[Poly], t: AlgebraicThreshold) -> int:
    at_t = [t.sign_of_poly(p) for p in chain]
    v_minus = sign_variations(p.sign_at_minus_infinity() for p in chain)
    v_t = sign_variations(at_t)
    return v_minus - v_t - (1 if at_t[0] == 0 else 0)


def count_roots_below(p: Poly, t: Threshold) -> int:
    """Number of real roots of the real-rooted p strictly below t, with multiplicity."""
    t = AlgebraicThreshold.of(t)
    total = 0
    for q, mult in squarefree_decomposition(p):
        total += mult * _count_distinct_below(sturm_chain(q), t)
    return total


def multiplicity_at(p: Poly, t: Threshold) -> int:
    t = AlgebraicThreshold.of(t)
    return sum(mult for q, mult in squarefree_decomposition(p) if t.sign_of_poly(q) == 0)


def lambda_min_cmp(S, t: Threshold) -> Cmp:
    """Exact trichotomy of the smallest eigenvalue of A(S) (or a matrix) against t."""
    p = char_poly(S)
    if p.degree < 1:
        raise ValueError("empty matrix has no eigenvalues")
    t = AlgebraicThreshold.of(t)
    if count_roots_below(p, t) > 0:
        return Cmp.LESS
    return Cmp.EQUAL if t.sign_of_poly(p) == 0 else Cmp.GREATER


def psd_class(M, shift: Union[int, Fraction] = 0) -> PsdClass:
    """Classify M + shift*I by symmetric elimination over the rationals."""
    a = [[Fraction(x) for x in row] for row in as_int_matrix(M)]
    _check_symmetric([[x for x in row] for row in a])
    n = len(a)
    for i in range(n):
        a[i][i] += Fraction(shift)
    singular = False
    for k in range(n):
        piv = a[k][k]
        if piv < 0:
            return PsdClass.NOT_PSD
        if piv == 0:
            if any(a[k][j] != 0 for j in range(k + 1, n)):
                return PsdClass.NOT_PSD
            singular = True
            continue
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return PsdClass.PSD_SINGULAR if singular else PsdClass.PD


def is_psd_shifted(S, shift: Union[int, Fraction] = 2) -> PsdClass:
    """Classify A(S) + shift*I: PD iff lambda_min > -shift, singular iff equal."""
    return psd_class(S, shift)


def jacobi_eigenvalues(M, max_sweeps: int = 64) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by the cyclic Jacobi method."""
    a = np.array(M, dtype=float)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0)
    if not np.allclose(a, a.T):
        raise ValueError("matrix is not symmetric")
    scale = max(np.abs(a).max(), 1.0)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2))
        if off <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
    else:
        # symmetric input always converges quadratically; reaching here is a bug
        raise AssertionError("Jacobi iteration did not converge")
    return np.sort(np.diag(a))


@dataclass(frozen=True)
class Spectrum:
    """Floating eigenvalues with rational enclosures certified by Sturm counts.

    ``certified_bounds[i] = (lo, hi)`` means the i-th eigenvalue lies in
    ``[lo, hi)``; repeated eigenvalues share their enclosure.
    """

    eigenvalues: np.ndarray
    certified_bounds: tuple[tuple[Fraction, Fraction], ...] = field(repr=False)

    def count_below(self, t: Threshold) -> int:
        """Number of enclosures lying entirely below t."""
        t = AlgebraicThreshold.of(t)
        return sum(1 for _, hi in self.certified_bounds if t.sign_minus(hi) >= 0)

    def count_above(self, t: Threshold) -> int:
        t = AlgebraicThreshold.of(t)
        return sum(1 for lo, _ in self.certified_bounds if t.sign_minus(lo) < 0)


def _root_bound(p: Poly) -> Fraction:
    lc = abs(p.lc)
    return 1 + max((Fraction(abs(c), lc) for c in p.coeffs[:-1]), default=Fraction(0))


def _isolate(p: Poly, tol: Fraction) -> list[tuple[Fraction, Fraction, int]]:
    """Bisection with exact counts: intervals [lo, hi) of width <= tol."""
    b = _root_bound(p)
    out = []
    stack = [(-b, b, count_roots_below(p, b) - count_roots_below(p, -b))]
    while stack:
        lo, hi, k = stack.pop()
        if k == 0:
            continue
        if hi - lo <= tol:
            out.append((lo, hi, k))
            continue
        mid = (lo + hi) / 2
        below_mid = count_roots_below(p, mid) - count_roots_below(p, lo)
        stack.append((mid, hi, k - below_mid))
        stack.append((lo, mid, below_mid))
    return sorted(out)


def approx_spectrum(M, tol: float = 1e-9) -> Spectrum:
    """All eigenvalues of an integer symmetric matrix with enclosures of width <= tol."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    a = as_int_matrix(M)
    _check_symmetric(a)
    n = len(a)
    if n == 0:
        return Spectrum(np.zeros(0), ())
    approx = jacobi_eigenvalues(a)
    p = char_poly(a)
    ftol = Fraction(tol)
    clusters: list[list[float]] = [[approx[0]]]
    for x in approx[1:]:
        if x - clusters[-1][-1] <= tol / 4:
            clusters[-1].append(x)
        else:
            clusters.append([x])
    bounds: list[tuple[Fraction, Fraction]] = []
    ok = True
    for cl in clusters:
        lo = Fraction(cl[0]) - ftol / 4
        hi = Fraction(cl[-1]) + ftol / 4
        if hi - lo > ftol or count_roots_below(p, hi) - count_roots_below(p, lo) != len(cl):
            ok = False
            break
        bounds.extend([(lo, hi)] * len(cl))
    if ok and all(bounds[i][1] <= bounds[i + 1][0] or bounds[i] == bounds[i + 1]
                  for i in range(n - 1)):
        return Spectrum(approx, tuple(bounds))
    # Jacobi approximations could not be certified at this width: isolate exactly
    vals, bounds = [], []
    for lo, hi, k in _isolate(p, ftol):
        vals.extend([float((lo + hi) / 2)] * k)
        bounds.extend([(lo, hi)] * k)
    return Spectrum(np.array(vals), tuple(bounds))

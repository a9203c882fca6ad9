"""Integer polynomials with just enough algebra for exact real-root counting.

Coefficients are stored lowest degree first.  Division and gcd go through
``Fraction`` and are renormalised to primitive integer polynomials, which is
safe for root counting because only positive rescaling is ever applied when
signs matter.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_high_first(cls, coeffs: Sequence[int]) -> "Poly":
        return cls(reversed(list(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                body = ("" if a == 1 else str(a)) + ("x" if k == 1 else f"x^{k}")
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coeffs or not other.coeffs:
            return Poly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive(self) -> "Poly":
        """Divide by the (positive) content; the sign of every value is kept."""
        g = self.content()
        if g in (0, 1):
            return self
        return Poly(c // g for c in self.coeffs)

    def sign_at_minus_infinity(self) -> int:
        s = 1 if self.lc > 0 else -1
        return s if self.degree % 2 == 0 else -s

    def sign_at_plus_infinity(self) -> int:
        return 1 if self.lc > 0 else -1


def _frac_list_to_poly(c: list[Fraction]) -> Poly:
    """Scale a rational coefficient list by a positive number to a primitive Poly."""
    while c and c[-1] == 0:
        c.pop()
    if not c:
        return Poly(())
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (x.denominator for x in c), 1)
    return Poly(int(x * den) for x in c).primitive()


def divmod_q(a: Poly, b: Poly) -> tuple[list[Fraction], list[Fraction]]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a.coeffs]
    q = [Fraction(0)] * max(len(r) - b.degree, 1)
    lb = Fraction(b.lc)
    while len(r) - 1 >= b.degree and any(r):
        shift = len(r) - 1 - b.degree
        f = r[-1] / lb
        q[shift] = f
        for i, bc in enumerate(b.coeffs):
            r[i + shift] -= f * bc
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return q, r


def rem(a: Poly, b: Poly) -> Poly:
    """Remainder of a by b, rescaled by a positive rational to integers."""
    return _frac_list_to_poly(divmod_q(a, b)[1])


def exact_quotient(a: Poly, b: Poly) -> Poly:
    q, r = divmod_q(a, b)
    if any(r):
        raise ValueError("division is not exact")
    return _frac_list_to_poly(q)


def gcd(a: Poly, b: Poly) -> Poly:
    """Primitive gcd with positive leading coefficient."""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        a, b = b, rem(a, b)
    if a.is_zero():
        return a
    return a if a.lc > 0 else -a


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = c * prod q_i^i with q_i squarefree and coprime."""
    if p.degree < 1:
        return []
    out = []
    c = gcd(p, p.derivative())
    w = exact_quotient(p, c) if c.degree > 0 else p.primitive()
    i = 1
    while w.degree > 0:
        y = gcd(w, c) if c.degree > 0 else Poly((1,))
        z = exact_quotient(w, y) if y.degree > 0 else w
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = exact_quotient(c, y) if y.degree > 0 else c
    return out


def sturm_chain(q: Poly) -> list[Poly]:
    chain = [q.primitive(), q.derivative().primitive()]
    while chain[-1].degree > 0:
        r = rem(chain[-2], chain[-1])
        if r.is_zero():
            break
        chain.append(-r)
    return chain


def sign_variations(signs: Iterable[int]) -> int:
    prev = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count

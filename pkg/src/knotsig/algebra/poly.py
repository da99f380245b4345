"""Univariate polynomials with exact rational coefficients.

``Poly`` stores coefficients lowest degree first.  ``LaurentPoly`` adds an
exponent offset, which is how Alexander polynomials are carried around.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .matrix import Matrix, bareiss_determinant


def _trim(cs: Sequence) -> tuple:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(_simplify(c) for c in cs)


def _simplify(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class Poly:
    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def monomial(cls, n: int, c=1) -> "Poly":
        return cls([0] * n + [c])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        out = Poly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = [Fraction(c) for c in self.coeffs]
        d = other.degree
        lead = Fraction(other.leading)
        q = [Fraction(0)] * max(len(r) - d, 0)
        for k in range(len(r) - d - 1, -1, -1):
            c = r[k + d] / lead
            q[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    r[k + i] -= c * b
        return Poly(q), Poly(r[:d] if d > 0 else [])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        """True when ``self`` divides ``other`` over Q."""
        return (other % self).is_zero()

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = Fraction(self.leading)
        return Poly(Fraction(c) / lead for c in self.coeffs)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def compose_power(self, n: int) -> "Poly":
        """p(t) -> p(t^n) for n >= 1."""
        out = [0] * (self.degree * n + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * n] = c
        return Poly(out)

    def content(self) -> int:
        """gcd of integer coefficients (positive); only for integer polys."""
        g = 0
        for c in self.coeffs:
            g = gcd(g, int(c))
        return g

    def primitive(self) -> "Poly":
        """Integer primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        ints = [int(Fraction(c) * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return Poly(c // g for c in ints)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_terms([(i, c) for i, c in enumerate(self.coeffs)], "t")


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: Poly) -> Poly:
    if p.degree < 1:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


def resultant(a: Poly, b: Poly) -> int | Fraction:
    """Resultant via the Sylvester determinant (integer-scaled Bareiss)."""
    m, n = a.degree, b.degree
    if m < 0 or n < 0:
        return 0
    if m == 0 and n == 0:
        return 1
    size = m + n
    rows = []
    ac = list(reversed(a.coeffs))
    bc = list(reversed(b.coeffs))
    for i in range(n):
        rows.append([0] * i + ac + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + bc + [0] * (size - n - 1 - i))
    den = 1
    for r in rows:
        for x in r:
            d = Fraction(x).denominator
            den = den * d // gcd(den, d)
    scaled = [[int(Fraction(x) * den) for x in r] for r in rows]
    det = bareiss_determinant(Matrix(scaled, size))
    return _simplify(Fraction(det, den**size))


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Poly:
    """The n-th cyclotomic polynomial, integer coefficients."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = Poly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic_poly(d))
    return Poly(int(c) for c in p.coeffs)


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("totient of a non-positive integer")
    out, m, f = n, n, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            out -= out // f
        f += 1
    if m > 1:
        out -= out // m
    return out


@dataclass(frozen=True)
class LaurentPoly:
    """``sum(coeffs[k] * t**(k + low))``."""

    low: int
    poly: Poly

    def __init__(self, coeffs: Iterable = (), low: int = 0):
        cs = list(coeffs.coeffs if isinstance(coeffs, Poly) else coeffs)
        while cs and cs[0] == 0:
            cs.pop(0)
            low += 1
        p = Poly(cs)
        object.__setattr__(self, "low", low if not p.is_zero() else 0)
        object.__setattr__(self, "poly", p)

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> "LaurentPoly":
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls([terms.get(k, 0) for k in range(lo, hi + 1)], lo)

    @property
    def high(self) -> int:
        return self.low + self.poly.degree

    @property
    def span(self) -> int:
        return self.poly.degree

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def terms(self) -> dict[int, int]:
        return {k + self.low: c for k, c in enumerate(self.poly.coeffs) if c}

    def coeff(self, k: int):
        return self.poly[k - self.low]

    def __call__(self, x):
        x = Fraction(x) if isinstance(x, int) and self.low < 0 else x
        return _simplify(self.poly(x) * x**self.low)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return LaurentPoly(self.poly * other, self.low)
        return LaurentPoly(self.poly * other.poly, self.low + other.low)

    __rmul__ = __mul__

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms = self.terms()
        for k, c in other.terms().items():
            terms[k] = terms.get(k, 0) + c
        return LaurentPoly.from_dict({k: c for k, c in terms.items() if c})

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(-self.poly, self.low)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __pow__(self, n: int) -> "LaurentPoly":
        return LaurentPoly(self.poly**n, self.low * n)

    def compose_power(self, n: int) -> "LaurentPoly":
        """t -> t^n; n may be negative or zero."""
        if n == 0:
            return LaurentPoly([self.poly(1)])
        if n > 0:
            return LaurentPoly(self.poly.compose_power(n), self.low * n)
        return LaurentPoly.from_dict({k * n: c for k, c in self.terms().items()})

    def is_symmetric(self) -> bool:
        return all(self.coeff(-k) == c for k, c in self.terms().items())

    def centered(self) -> "LaurentPoly":
        """Shift by a power of t so the exponents are balanced around 0."""
        if self.is_zero():
            return self
        if (self.low + self.high) % 2:
            raise ValueError("odd span cannot be centred")
        return LaurentPoly(self.poly, -self.poly.degree // 2)

    def with_positive_lead(self) -> "LaurentPoly":
        return -self if self.poly.leading < 0 else self

    def conway_normalized(self) -> "LaurentPoly":
        """Sign chosen so the value at t = 1 is positive."""
        return -self if self.poly(1) < 0 else self

    def ordinary(self) -> Poly:
        """The polynomial t^(-low) * self."""
        return self.poly

    def __repr__(self) -> str:
        return f"LaurentPoly({list(self.poly.coeffs)}, low={self.low})"

    def __str__(self) -> str:
        return format_terms(sorted(self.terms().items()), "t")


def format_terms(terms, var: str) -> str:
    parts = []
    for k, c in terms:
        if c == 0:
            continue
        c = _simplify(c)
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


def trace_polynomial(delta: LaurentPoly) -> Poly:
    """g with delta(t) = g(t + 1/t) for a symmetric Laurent polynomial.

    Roots of delta on the unit circle at angle theta correspond to roots
    of g at 2*cos(theta) in [-2, 2].
    """
    if not delta.is_symmetric():
        raise ValueError("trace polynomial needs a symmetric Laurent polynomial")
    top = delta.high
    # P_k(x) = t^k + t^-k
    P = [Poly([2]), Poly([0, 1])]
    for _ in range(2, top + 1):
        P.append(Poly([0, 1]) * P[-1] - P[-2])
    g = Poly([delta.coeff(0)])
    for k in range(1, top + 1):
        c = delta.coeff(k)
        if c:
            g = g + P[k] * c
    return g

"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are coefficient vectors in the power basis 1, zeta, ...,
zeta^(phi(n)-1).  Equality with zero is exact, which is what makes the
field useful as a zero certificate for numerical sign evaluation.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .interval import IntervalReal, cos_2pi, refine_sign
from .poly import Poly, cyclotomic_poly


class CyclotomicField:
    def __new__(cls, n: int):
        return _field(n)

    def _setup(self, n: int):
        self.n = n
        self.modulus = cyclotomic_poly(n)
        self.degree = self.modulus.degree
        # zeta^k reduced, for 0 <= k < n
        powers = []
        cur = [Fraction(1)] + [Fraction(0)] * (self.degree - 1)
        for _ in range(n):
            powers.append(tuple(cur))
            cur = self._reduce([Fraction(0)] + cur)
        self._powers = powers

    def _reduce(self, cs: list) -> list:
        d = self.degree
        m = self.modulus.coeffs
        cs = list(cs)
        for k in range(len(cs) - 1, d - 1, -1):
            c = cs[k]
            if c:
                for i in range(d):
                    cs[k - d + i] -= c * m[i]
            cs[k] = 0
        cs = cs[:d]
        return cs + [Fraction(0)] * (d - len(cs))

    def element(self, coeffs) -> "CycloElement":
        return CycloElement(self, tuple(Fraction(c) for c in self._reduce([Fraction(c) for c in coeffs])))

    def scalar(self, c) -> "CycloElement":
        return CycloElement(self, (Fraction(c),) + (Fraction(0),) * (self.degree - 1))

    def zero(self) -> "CycloElement":
        return self.scalar(0)

    def one(self) -> "CycloElement":
        return self.scalar(1)

    def zeta_power(self, k: int) -> "CycloElement":
        return CycloElement(self, self._powers[k % self.n])

    def __repr__(self) -> str:
        return f"CyclotomicField({self.n})"


@lru_cache(maxsize=None)
def _field(n: int) -> CyclotomicField:
    if n < 1:
        raise ValueError("cyclotomic field index must be positive")
    F = object.__new__(CyclotomicField)
    F._setup(n)
    return F


class CycloElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloElement):
            other = self.field.scalar(other)
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.n, self.coeffs))

    def __add__(self, other) -> "CycloElement":
        if not isinstance(other, CycloElement):
            other = self.field.scalar(other)
        return CycloElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloElement":
        return CycloElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "CycloElement":
        if not isinstance(other, CycloElement):
            other = self.field.scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> "CycloElement":
        return (-self) + other

    def __mul__(self, other) -> "CycloElement":
        if not isinstance(other, CycloElement):
            c = Fraction(other)
            return CycloElement(self.field, tuple(a * c for a in self.coeffs))
        out = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return CycloElement(self.field, tuple(self.field._reduce(out)))

    __rmul__ = __mul__

    def conj(self) -> "CycloElement":
        """Complex conjugation, zeta -> zeta^-1."""
        F = self.field
        acc = [Fraction(0)] * F.degree
        for k, c in enumerate(self.coeffs):
            if c:
                for i, b in enumerate(F._powers[(-k) % F.n]):
                    acc[i] += c * b
        return CycloElement(F, tuple(acc))

    def inverse(self) -> "CycloElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        # extended Euclid: u * self == 1 mod Phi_n
        a, b = Poly(self.coeffs), self.field.modulus
        u0, u1 = Poly([1]), Poly([])
        while not b.is_zero():
            q, r = divmod(a, b)
            a, b = b, r
            u0, u1 = u1, u0 - q * u1
        # a is a nonzero constant
        inv_c = 1 / Fraction(a.coeffs[0])
        return self.field.element([c * inv_c for c in u0.coeffs])

    def __truediv__(self, other) -> "CycloElement":
        if not isinstance(other, CycloElement):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def is_real(self) -> bool:
        return self == self.conj()

    def real_enclosure(self, bits: int) -> IntervalReal:
        """Enclosure of the real part (the value itself for real elements)."""
        acc = IntervalReal.exact(0, bits)
        n = self.field.n
        for k, c in enumerate(self.coeffs):
            if c:
                acc = acc + cos_2pi(Fraction(k, n), bits) * c
        return acc

    def sign(self) -> int:
        """Certified sign of a real element."""
        return refine_sign(self.real_enclosure, self.is_zero)

    def __repr__(self) -> str:
        return f"CycloElement(n={self.field.n}, {[str(c) for c in self.coeffs]})"

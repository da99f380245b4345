"""Dyadic intervals and certified signs of cyclotomic real expressions.

Transcendental enclosures (cos, sin of rational multiples of 2*pi) come
from mpmath's outward-rounded interval context; endpoints are converted to
exact dyadic ``Fraction`` values so all later comparisons are exact.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from mpmath.ctx_iv import MPIntervalContext

DEFAULT_BITS = 64
MAX_BITS = 1 << 16

# private context: mpmath keeps precision on the context object
_iv = MPIntervalContext()
_iv_lock = threading.Lock()


class UndecidedSignError(ArithmeticError):
    """Precision cap reached while the enclosure still straddles zero."""


def _mpf_to_fraction(tup) -> Fraction:
    sign, man, exp, _ = tup
    if not man:
        if exp:  # inf / nan encodings
            raise ArithmeticError("non-finite interval endpoint")
        return Fraction(0)
    v = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -v if sign else v


@dataclass(frozen=True)
class IntervalReal:
    lo: Fraction
    hi: Fraction
    bits: int = DEFAULT_BITS

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @classmethod
    def exact(cls, x, bits: int = DEFAULT_BITS) -> "IntervalReal":
        x = Fraction(x)
        return cls(x, x, bits)

    @classmethod
    def _from_iv(cls, v, bits: int) -> "IntervalReal":
        lo, hi = v._mpi_
        return cls(_mpf_to_fraction(lo), _mpf_to_fraction(hi), bits)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def sign(self) -> int | None:
        """+1/-1 when the interval excludes zero, else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return None

    def __add__(self, other) -> "IntervalReal":
        o = _lift(other, self.bits)
        return IntervalReal(self.lo + o.lo, self.hi + o.hi, min(self.bits, o.bits))

    __radd__ = __add__

    def __neg__(self) -> "IntervalReal":
        return IntervalReal(-self.hi, -self.lo, self.bits)

    def __sub__(self, other) -> "IntervalReal":
        return self + (-_lift(other, self.bits))

    def __rsub__(self, other) -> "IntervalReal":
        return _lift(other, self.bits) - self

    def __mul__(self, other) -> "IntervalReal":
        o = _lift(other, self.bits)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return IntervalReal(min(ps), max(ps), min(self.bits, o.bits))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"[{float(self.lo)!r}, {float(self.hi)!r}]@{self.bits}"


def _lift(x, bits: int) -> IntervalReal:
    return x if isinstance(x, IntervalReal) else IntervalReal.exact(x, bits)


def cos_2pi(x: Fraction, bits: int = DEFAULT_BITS) -> IntervalReal:
    """Enclosure of cos(2*pi*x) for rational x."""
    x = Fraction(x) % 1
    exact = _exact_cos(x)
    if exact is not None:
        return IntervalReal.exact(exact, bits)
    with _iv_lock:
        _iv.prec = bits + 8
        v = _iv.cos(2 * _iv.pi * _iv.mpf(x.numerator) / x.denominator)
        return IntervalReal._from_iv(v, bits)


def sin_2pi(x: Fraction, bits: int = DEFAULT_BITS) -> IntervalReal:
    return cos_2pi(Fraction(1, 4) - Fraction(x), bits)


def _exact_cos(x: Fraction) -> Fraction | None:
    return {
        Fraction(0): Fraction(1),
        Fraction(1, 4): Fraction(0),
        Fraction(1, 2): Fraction(-1),
        Fraction(3, 4): Fraction(0),
        Fraction(1, 6): Fraction(1, 2),
        Fraction(5, 6): Fraction(1, 2),
        Fraction(1, 3): Fraction(-1, 2),
        Fraction(2, 3): Fraction(-1, 2),
    }.get(x)


class CycloExpr:
    """Real arithmetic expression in cos/sin of rational multiples of 2*pi.

    ``enclose(bits)`` returns a certified interval; ``to_field()`` returns the
    exact value as an element of a cyclotomic field, which is what the zero
    certificate inspects.
    """

    def enclose(self, bits: int) -> IntervalReal:
        raise NotImplementedError

    def to_field(self, n: int):
        raise NotImplementedError

    def conductor(self) -> int:
        raise NotImplementedError

    def __add__(self, other) -> "CycloExpr":
        return _Sum(self, _wrap(other))

    __radd__ = __add__

    def __sub__(self, other) -> "CycloExpr":
        return _Sum(self, _Scaled(_wrap(other), Fraction(-1)))

    def __rsub__(self, other) -> "CycloExpr":
        return _Sum(_wrap(other), _Scaled(self, Fraction(-1)))

    def __mul__(self, other) -> "CycloExpr":
        if isinstance(other, (int, Fraction)):
            return _Scaled(self, Fraction(other))
        return _Product(self, other)

    __rmul__ = __mul__

    def __neg__(self) -> "CycloExpr":
        return _Scaled(self, Fraction(-1))


def _wrap(x) -> CycloExpr:
    return x if isinstance(x, CycloExpr) else Const(x)


class Const(CycloExpr):
    def __init__(self, value):
        self.value = Fraction(value)

    def enclose(self, bits):
        return IntervalReal.exact(self.value, bits)

    def to_field(self, n):
        from .cyclotomic import CyclotomicField

        return CyclotomicField(n).scalar(self.value)

    def conductor(self):
        return 1


class Cos(CycloExpr):
    """cos(2*pi*x)."""

    def __init__(self, x):
        self.x = Fraction(x)

    def enclose(self, bits):
        return cos_2pi(self.x, bits)

    def to_field(self, n):
        from .cyclotomic import CyclotomicField

        F = CyclotomicField(n)
        k = self.x * n
        assert k.denominator == 1
        z = F.zeta_power(int(k))
        return (z + z.conj()) * Fraction(1, 2)

    def conductor(self):
        return self.x.denominator


class Sin(CycloExpr):
    """sin(2*pi*x)."""

    def __init__(self, x):
        self.x = Fraction(x)

    def enclose(self, bits):
        return sin_2pi(self.x, bits)

    def to_field(self, n):
        from .cyclotomic import CyclotomicField

        F = CyclotomicField(n)
        k = self.x * n
        assert k.denominator == 1
        z = F.zeta_power(int(k))
        i = F.zeta_power(n // 4)
        # (z - z^-1) / (2i) = -(i/2)(z - z^-1)
        return (z - z.conj()) * i * Fraction(-1, 2)

    def conductor(self):
        from math import lcm

        return lcm(self.x.denominator, 4)


class _Sum(CycloExpr):
    def __init__(self, a, b):
        self.a, self.b = a, b

    def enclose(self, bits):
        return self.a.enclose(bits) + self.b.enclose(bits)

    def to_field(self, n):
        return self.a.to_field(n) + self.b.to_field(n)

    def conductor(self):
        from math import lcm

        return lcm(self.a.conductor(), self.b.conductor())


class _Product(_Sum):
    def enclose(self, bits):
        return self.a.enclose(bits) * self.b.enclose(bits)

    def to_field(self, n):
        return self.a.to_field(n) * self.b.to_field(n)


class _Scaled(CycloExpr):
    def __init__(self, a, c: Fraction):
        self.a, self.c = a, c

    def enclose(self, bits):
        return self.a.enclose(bits) * self.c

    def to_field(self, n):
        return self.a.to_field(n) * self.c

    def conductor(self):
        return self.a.conductor()


def exact_zero(expr: CycloExpr) -> bool:
    """Symbolic zero test: reduce the expression in Q(zeta_n) and compare."""
    return expr.to_field(expr.conductor()).is_zero()


def refine_sign(
    enclose: Callable[[int], IntervalReal] | CycloExpr,
    zero_certificate: Callable[[], bool] | None = None,
    start_bits: int = DEFAULT_BITS,
    max_bits: int = MAX_BITS,
) -> int:
    """Certified sign of a real quantity.

    Precision doubles until the enclosure excludes zero.  Zero is returned
    only when ``zero_certificate`` says so; the numerics never decide it.
    """
    if isinstance(enclose, CycloExpr):
        expr = enclose
        enclose = expr.enclose
        if zero_certificate is None:
            zero_certificate = lambda: exact_zero(expr)  # noqa: E731
    checked = False
    bits = start_bits
    while bits <= max_bits:
        s = enclose(bits).sign()
        if s is not None:
            return s
        if not checked and zero_certificate is not None:
            if zero_certificate():
                return 0
            checked = True
        bits *= 2
    raise UndecidedSignError(f"sign undecided at {max_bits} bits")

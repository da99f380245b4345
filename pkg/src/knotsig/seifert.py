"""Invariants read off a Seifert matrix.

The signature function is computed once per matrix.  Roots of the
Alexander polynomial on the unit circle are located in the trace variable
c = t + 1/t = 2cos(2*pi*x): roots of cyclotomic factors give rational jump
points, the remaining factor is isolated with Sturm sequences.  Between two
consecutive jumps the signature is evaluated exactly at a rational point
of the unit circle, where the Hermitian form has entries in Q(i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Sequence

from .algebra import (
    CyclotomicField,
    LaurentPoly,
    Matrix,
    Poly,
    bareiss_determinant,
    count_roots,
    cos_2pi,
    cyclotomic_poly,
    euler_phi,
    field_rank,
    hermitian_inertia,
    isolate_roots,
    poly_gcd,
    refine_root,
    squarefree_part,
    sturm_sequence,
    trace_polynomial,
)
from .algebra.interval import DEFAULT_BITS, MAX_BITS, UndecidedSignError
from .algebra.matrix import kron


class SeifertError(ValueError):
    pass


def _as_int(x) -> int:
    if isinstance(x, bool) or int(x) != x:
        raise SeifertError(f"Seifert matrix entries must be integers, got {x!r}")
    return int(x)


@dataclass(frozen=True)
class SeifertMatrix:
    """Square integer matrix V of even size with det(V - V^T) = 1."""

    V: Matrix

    def __init__(self, rows: Matrix | Iterable[Iterable[int]]):
        m = rows if isinstance(rows, Matrix) else Matrix([[_as_int(x) for x in r] for r in rows])
        if not m.is_square:
            raise SeifertError(f"Seifert matrix must be square, got {m.shape}")
        if m.nrows % 2:
            raise SeifertError("Seifert matrix must have even size")
        if any(not isinstance(x, int) for r in m.rows for x in r):
            raise SeifertError("Seifert matrix entries must be integers")
        if m.nrows:
            det = bareiss_determinant(m - m.T)
            if det != 1:
                raise SeifertError(f"det(V - V^T) = {det}, expected 1")
        object.__setattr__(self, "V", m)

    @classmethod
    def unknot(cls) -> "SeifertMatrix":
        return cls(Matrix([], 0))

    @property
    def genus(self) -> int:
        return self.V.nrows // 2

    @property
    def size(self) -> int:
        return self.V.nrows

    def tolist(self) -> list[list[int]]:
        return self.V.tolist()

    def key(self) -> tuple:
        return self.V.rows

    def mirror(self) -> "SeifertMatrix":
        return SeifertMatrix(-self.V.T)


def torus_seifert_matrix(p: int, q: int) -> SeifertMatrix:
    """Fibre-surface Seifert matrix of the positive torus knot T(p, q).

    V = -(U_p (x) U_q) where U_k is the (k-1)x(k-1) upper bidiagonal matrix
    with 1 on the diagonal and -1 above it.
    """
    if p < 1 or q < 1 or gcd(p, q) != 1:
        raise SeifertError(f"torus knot needs coprime positive parameters, got ({p}, {q})")

    def u(k: int) -> Matrix:
        n = k - 1
        return Matrix([[1 if i == j else -1 if j == i + 1 else 0 for j in range(n)] for i in range(n)], n)

    return SeifertMatrix(-kron(u(p), u(q)))


# --- Alexander polynomial ---------------------------------------------------


def _poly_det(entries: list[list[Poly]]) -> Poly:
    """Bareiss over Z[t]; every division is exact."""
    n = len(entries)
    if n == 0:
        return Poly([1])
    a = [list(r) for r in entries]
    sign, prev = 1, Poly([1])
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Poly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - f * a[k][j]).exact_div(prev)
            a[i][k] = Poly()
        prev = piv
    return a[-1][-1] * sign


@lru_cache(maxsize=1024)
def _alexander(key: tuple) -> LaurentPoly:
    V = Matrix(key, len(key))
    n = V.nrows
    entries = [[Poly([V[i, j], -V[j, i]]) for j in range(n)] for i in range(n)]
    d = _poly_det(entries)
    return LaurentPoly(d).centered().with_positive_lead()


def alexander_polynomial(V: SeifertMatrix) -> LaurentPoly:
    """det(V - t V^T), centred and with positive leading coefficient."""
    return _alexander(V.key())


# --- signature function -------------------------------------------------------


@dataclass(frozen=True)
class SignatureValue:
    argument: Fraction
    twice: int
    nullity: int
    is_jump: bool

    @property
    def signature(self) -> Fraction:
        return Fraction(self.twice, 2)


class _Root:
    """A root of Delta on the upper unit half-circle, tracked in c-space."""

    def __init__(self, theta: Fraction | None, poly: Poly | None, lo: Fraction, hi: Fraction):
        self.theta = theta  # exact angle for cyclotomic roots
        self.poly = poly  # defining trace factor for the others
        self.lo, self.hi = lo, hi
        self._bits = DEFAULT_BITS

    @classmethod
    def rational(cls, theta: Fraction) -> "_Root":
        enc = cos_2pi(theta, DEFAULT_BITS)
        return cls(theta, None, 2 * enc.lo, 2 * enc.hi)

    def refine(self) -> None:
        if self.theta is not None:
            self._bits *= 2
            if self._bits > MAX_BITS:
                raise UndecidedSignError("could not separate jump points")
            enc = cos_2pi(self.theta, self._bits)
            self.lo, self.hi = 2 * enc.lo, 2 * enc.hi
        else:
            self.lo, self.hi = refine_root(self.poly, self.lo, self.hi)

    @property
    def c_approx(self) -> float:
        return float((self.lo + self.hi) / 2)

    def theta_approx(self) -> float:
        import math

        c = max(-2.0, min(2.0, self.c_approx))
        return math.acos(c / 2) / (2 * math.pi)


@dataclass(frozen=True)
class Jump:
    """A root of Delta(e^{2 pi i x}) with 0 < x < 1.

    ``theta`` is exact for roots of unity; otherwise ``trace_factor`` is the
    irreducible-over-Q part of the trace polynomial it is a root of and
    ``c_interval`` isolates 2cos(2 pi x).
    """

    theta: Fraction | None
    approx: float
    c_interval: tuple[Fraction, Fraction]
    trace_factor: Poly | None
    mirrored: bool
    height_twice: int

    @property
    def is_rational(self) -> bool:
        return self.theta is not None

    @property
    def location(self) -> Fraction | float:
        return self.theta if self.theta is not None else self.approx


@dataclass
class SignatureFunction:
    """Levine-Tristram signature function of one Seifert matrix.

    ``plateaus[k]`` is the value on the k-th open interval of (0, 1/2]
    between consecutive roots; values on (1/2, 1) follow by symmetry.
    """

    genus: int
    delta: LaurentPoly
    roots: list[_Root]
    plateaus: list[int]
    rational_index: dict[Fraction, int]
    irrational: Poly
    _seq: list = field(default_factory=list, repr=False)
    _key: tuple = field(default=(), repr=False)

    def _count_irrational_above(self, x: Fraction) -> int:
        """Irrational roots with angle < x, i.e. with c above 2cos(2 pi x)."""
        if self.irrational.degree < 1:
            return 0
        bits = DEFAULT_BITS
        while bits <= MAX_BITS:
            enc = cos_2pi(x, bits)
            lo, hi = 2 * enc.lo, 2 * enc.hi
            if count_roots(self.irrational, lo, hi, self._seq or None) == 0 and self.irrational(lo) != 0:
                return count_roots(self.irrational, hi, 2, self._seq or None)
            bits *= 2
        raise UndecidedSignError(f"could not place {x} among signature jumps")

    def plateau_index(self, x: Fraction) -> int:
        """Index of the plateau containing x in (0, 1/2], x not a root."""
        rational_below = sum(1 for r in self.roots if r.theta is not None and r.theta < x)
        return rational_below + self._count_irrational_above(x)

    def at(self, x) -> SignatureValue:
        x = Fraction(x)
        y = x % 1
        if y == 0:
            return SignatureValue(x, 0, 2 * self.genus, self.genus > 0)
        y = min(y, 1 - y)
        k = self.rational_index.get(y)
        if k is not None:
            twice = self.plateaus[k] + self.plateaus[k + 1]
            return SignatureValue(x, twice, _nullity_at(self, y), True)
        return SignatureValue(x, 2 * self.plateaus[self.plateau_index(y)], 0, False)

    def jumps(self) -> list[Jump]:
        """All roots in (0, 1) ordered by angle, with doubled jump heights."""
        half = []
        for k, r in enumerate(self.roots):
            h = 2 * (self.plateaus[k + 1] - self.plateaus[k])
            half.append((r, h))
        out = [
            Jump(r.theta, float(r.theta) if r.theta is not None else r.theta_approx(), (r.lo, r.hi), r.poly, False, h)
            for r, h in half
        ]
        mirrored = [
            Jump(
                1 - r.theta if r.theta is not None else None,
                float(1 - r.theta) if r.theta is not None else 1 - r.theta_approx(),
                (r.lo, r.hi),
                r.poly,
                True,
                -h,
            )
            for r, h in reversed(half)
        ]
        return out + mirrored

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.plateaus)

    def has_irrational_jumps(self) -> bool:
        return any(j.theta is None and j.height_twice for j in self.jumps())

    def to_step_function(self):
        """Exact ``StepFunction``; only for functions with rational jumps."""
        from .stepfn import StepFunction

        pts = []
        for j in self.jumps():
            if j.height_twice == 0:
                continue
            if j.theta is None:
                raise ValueError("signature function has irrational jumps")
            pts.append((j.theta, Fraction(j.height_twice, 2)))
        return StepFunction(pts)

    def integral(self) -> Fraction | None:
        """Exact integral over [0,1], or None when some jump is irrational."""
        if self.has_irrational_jumps():
            return None
        return self.to_step_function().integral()


def _sample_omega(a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    """Rational point (re, im) on the unit circle, im >= 0, with 2*re in (a, b)."""
    if a <= -2:
        return Fraction(-1), Fraction(0)
    # s = tan(pi x) parametrises the upper half-circle; c = 2(1-s^2)/(1+s^2)
    u_lo = (2 - b) / (2 + b)
    u_hi = (2 - a) / (2 + a)
    den = 1
    while True:
        num = isqrt((u_lo * den * den).__floor__()) + 1
        s = Fraction(num, den)
        if s * s < u_hi:
            break
        den *= 2
    s2 = s * s
    return (1 - s2) / (1 + s2), 2 * s / (1 + s2)


def _form_q_i(V: Matrix, re: Fraction, im: Fraction):
    """(1 - w)V + (1 - conj w)V^T over Q(i) for w = re + i*im."""
    K = CyclotomicField(4)
    i = K.zeta_power(1)
    one_minus_w = K.scalar(1 - re) - i * im
    one_minus_wb = K.scalar(1 - re) + i * im
    n = V.nrows
    return [[one_minus_w * V[r, c] + one_minus_wb * V[c, r] for c in range(n)] for r in range(n)]


def hermitian_form(V: Matrix, j: int, n: int):
    """(1 - z^j)V + (1 - z^-j)V^T over Q(zeta_n)."""
    K = CyclotomicField(n)
    a = K.one() - K.zeta_power(j)
    b = K.one() - K.zeta_power(-j)
    size = V.nrows
    return [[a * V[r, c] + b * V[c, r] for c in range(size)] for r in range(size)]


def _nullity_at(sf: SignatureFunction, y: Fraction) -> int:
    return _nullity(sf._key, y.numerator, y.denominator)


@lru_cache(maxsize=4096)
def _nullity(key: tuple, j: int, d: int) -> int:
    V = Matrix(key, len(key))
    return V.nrows - field_rank(hermitian_form(V, j, d))


def _trace_of_cyclotomic(d: int) -> Poly:
    return trace_polynomial(LaurentPoly(cyclotomic_poly(d)).centered())


def _separate(roots: list[_Root]) -> list[_Root]:
    """Refine until the c-intervals are disjoint; return sorted by angle."""
    while True:
        roots.sort(key=lambda r: (-r.hi, -r.lo))
        clash = False
        for a, b in zip(roots, roots[1:]):
            if b.hi >= a.lo:
                a.refine()
                b.refine()
                clash = True
        if not clash:
            return roots


@lru_cache(maxsize=1024)
def _signature_function(key: tuple) -> SignatureFunction:
    V = Matrix(key, len(key))
    n = V.nrows
    delta = _alexander(key)
    if n == 0:
        return SignatureFunction(0, delta, [], [0], {}, Poly([1]), [], key)
    ordinary = delta.ordinary()
    g = trace_polynomial(delta)
    rest = squarefree_part(g)
    roots: list[_Root] = []
    span = ordinary.degree
    # phi(d) >= sqrt(d/2), so phi(d) <= span forces d <= 2 span^2
    for d in range(3, 2 * span * span + 1):
        if euler_phi(d) <= span and cyclotomic_poly(d).divides(ordinary):
            for j in range(1, (d + 1) // 2):
                if gcd(j, d) == 1:
                    roots.append(_Root.rational(Fraction(j, d)))
            psi = _trace_of_cyclotomic(d)
            common = poly_gcd(rest, psi)
            if common.degree > 0:
                rest = rest.exact_div(common).monic()
    rest = rest.monic()
    if rest.degree >= 1:
        for lo, hi in isolate_roots(rest, -2, 2):
            roots.append(_Root(None, rest, lo, hi))
    roots = _separate(roots)
    # plateau samples need room strictly inside (-2, 2)
    while roots and roots[0].hi >= 2:
        roots[0].refine()
    while roots and roots[-1].lo <= -2:
        roots[-1].refine()

    # plateau samples, from c = 2 (x = 0) downwards to c = -2 (x = 1/2)
    edges = [Fraction(2)]
    for r in roots:
        edges += [r.hi, r.lo]
    edges.append(Fraction(-2))
    plateaus = []
    for k in range(len(roots) + 1):
        upper, lower = edges[2 * k], edges[2 * k + 1]
        re, im = _sample_omega(lower, upper)
        plateaus.append(hermitian_inertia(_form_q_i(V, re, im)).signature)

    rational_index = {r.theta: k for k, r in enumerate(roots) if r.theta is not None}
    seq = sturm_sequence(rest) if rest.degree >= 1 else []
    return SignatureFunction(n // 2, delta, roots, plateaus, rational_index, rest, seq, key)


def signature_function(V: SeifertMatrix) -> SignatureFunction:
    return _signature_function(V.key())


def signature_at(V: SeifertMatrix, x) -> SignatureValue:
    """Levine-Tristram signature at a rational x, averaged at jumps."""
    if isinstance(x, float):
        raise TypeError("signature is evaluated at exact rationals only")
    return signature_function(V).at(Fraction(x))


# --- Witt class shadow ---------------------------------------------------------


@dataclass(frozen=True)
class HermitianRepresentative:
    j: int
    p: int
    matrix: list
    signature: int
    rank: int
    nullity: int


def witt_representative(V: SeifertMatrix, j: int, p: int) -> HermitianRepresentative:
    """(1 - zeta_p^j)V + (1 - zeta_p^-j)V^T with its inertia."""
    if p < 2:
        raise ValueError("p must be at least 2")
    if j % p == 0:
        raise ValueError("j = 0 mod p gives the trivial character")
    h = hermitian_form(V.V, j, p)
    inertia = hermitian_inertia(h)
    return HermitianRepresentative(j, p, h, inertia.signature, inertia.rank, inertia.zero)


# --- Arf, Fox-Milnor, m(K) ---------------------------------------------------------


def determinant(V: SeifertMatrix) -> int:
    return abs(alexander_polynomial(V)(-1))


def arf_from_alexander(delta: LaurentPoly) -> int:
    return 0 if delta(-1) % 8 in (1, 7) else 1


def arf(V: SeifertMatrix) -> int:
    return arf_from_alexander(alexander_polynomial(V))


def arf_bruteforce(V: SeifertMatrix) -> int:
    """Majority value of x^T V x mod 2 over (Z/2)^2g; exponential."""
    n = V.size
    if n == 0:
        return 0
    M = V.V
    ones = 0
    for bits in range(1 << n):
        x = [(bits >> i) & 1 for i in range(n)]
        q = sum(x[i] * M[i, j] * x[j] for i in range(n) for j in range(n)) % 2
        ones += q
    return 1 if ones > (1 << n) // 2 else 0


@dataclass(frozen=True)
class FoxMilnorReport:
    determinant: int
    determinant_is_square: bool
    decided: bool
    factor: LaurentPoly | None
    passes: bool
    reason: str


def _search_factor(target: Sequence[int], n: int) -> list[int] | None:
    """Integers c_0..c_n, c_0 c_n != 0, with sum_i c_i c_{i+k} = target[k]."""
    bound = isqrt(target[0])
    c: list[int] = []

    def rec(sq_left: int) -> list[int] | None:
        m = len(c)
        if m == n + 1:
            if sq_left != 0 or c[-1] == 0:
                return None
            for k in range(1, n + 1):
                if sum(c[i] * c[i + k] for i in range(n + 1 - k)) != target[k]:
                    return None
            return list(c)
        b = min(bound, isqrt(sq_left))
        for v in range(-b, b + 1):
            if m == 0 and v <= 0:
                continue  # overall sign of f is irrelevant
            c.append(v)
            if m == n and v * c[0] != target[n]:
                c.pop()
                continue
            r = rec(sq_left - v * v)
            c.pop()
            if r is not None:
                return r
        return None

    return rec(target[0])


def fox_milnor(delta: LaurentPoly, max_span: int = 8) -> FoxMilnorReport:
    """Can Delta be written as +-f(t)f(1/t)?  Decided exactly up to ``max_span``."""
    if not delta.is_symmetric() and not delta.centered().is_symmetric():
        raise ValueError("Fox-Milnor test needs a symmetric Laurent polynomial")
    delta = delta.centered()
    if not delta.is_symmetric():
        raise ValueError("Fox-Milnor test needs a symmetric Laurent polynomial")
    if abs(delta(1)) != 1:
        raise ValueError(f"Delta(1) = {delta(1)}, expected +-1")
    det = abs(delta(-1))
    r = isqrt(det)
    square = r * r == det
    if not square:
        return FoxMilnorReport(det, False, True, None, False, f"|Delta(-1)| = {det} is not a square")
    if delta.span > max_span:
        return FoxMilnorReport(det, True, False, None, True, "determinant is a square; span too large to decide")
    n = delta.span // 2
    target = [delta.coeff(k) for k in range(n + 1)]
    if target[0] < 0:
        target = [-x for x in target]
    sol = _search_factor(target, n)
    if sol is None:
        return FoxMilnorReport(det, True, True, None, False, "no integer factor f with Delta = +-f(t)f(1/t)")
    return FoxMilnorReport(det, True, True, LaurentPoly(sol), True, "factor found")


def fox_milnor_necessary(V: SeifertMatrix) -> FoxMilnorReport:
    return fox_milnor(alexander_polynomial(V))


def m_parameter_from_alexander(delta: LaurentPoly) -> int | None:
    delta = delta.with_positive_lead()
    if delta.span == 0:
        return 0 if abs(delta(1)) == 1 else None
    if delta.span != 2:
        return None
    a, b = delta.poly.coeffs[0], delta.poly.coeffs[1]
    if delta.poly.coeffs[2] != a or a <= 0 or b != -(2 * a + 1):
        return None
    s = isqrt(4 * a + 1)
    if s * s != 4 * a + 1:
        return None
    return (s - 1) // 2


def m_parameter(V: SeifertMatrix) -> int | None:
    """m with Delta = m(m+1)t^-1 - (m^2 + (m+1)^2) + m(m+1)t, else None."""
    return m_parameter_from_alexander(alexander_polynomial(V))

"""Knot expressions and their compositional invariants.

A ``KnotExpr`` is an immutable tree.  Leaves carry a Seifert matrix, a torus
knot or the unknot; nodes are mirror images, connected sums, cables,
twisted Whitehead doubles and general satellites.  Signatures, Alexander
polynomials and tau are evaluated recursively from the leaves.

Text grammar::

    expr := "unknot" | "torus(" int "," int ")" | "seifert(" matrix ")"
          | "mirror(" expr ")" | "sum(" expr "," expr ")"
          | "cable(" int "," int "," expr ")" | "wh(" expr "," int ")"
          | "satellite(" expr "," expr "," int ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Union

from .algebra import LaurentPoly, Poly
from .algebra.matrix import Matrix, block_diag
from .seifert import (
    SeifertMatrix,
    SignatureValue,
    alexander_polynomial,
    signature_function,
    torus_seifert_matrix,
)


class ExprError(ValueError):
    pass


class ParseError(ExprError):
    pass


@dataclass(frozen=True)
class Unknot:
    def __str__(self) -> str:
        return "unknot"


@dataclass(frozen=True)
class SeifertLeaf:
    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows):
        rows = rows.V.rows if isinstance(rows, SeifertMatrix) else tuple(tuple(int(x) for x in r) for r in rows)
        SeifertMatrix(Matrix(rows, len(rows)))  # validates
        object.__setattr__(self, "rows", rows)

    @property
    def matrix(self) -> SeifertMatrix:
        return SeifertMatrix(Matrix(self.rows, len(self.rows)))

    def __str__(self) -> str:
        return "seifert([" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.rows) + "])"


@dataclass(frozen=True)
class Torus:
    p: int
    q: int

    def __post_init__(self):
        if gcd(self.p, self.q) != 1:
            raise ExprError(f"torus({self.p},{self.q}): parameters must be coprime")

    def __str__(self) -> str:
        return f"torus({self.p},{self.q})"


@dataclass(frozen=True)
class Mirror:
    e: "KnotExpr"

    def __str__(self) -> str:
        return f"mirror({self.e})"


@dataclass(frozen=True)
class Sum:
    a: "KnotExpr"
    b: "KnotExpr"

    def __str__(self) -> str:
        return f"sum({self.a},{self.b})"


@dataclass(frozen=True)
class Cable:
    """``e_(r,s)``: r longitudes and s meridians of the companion e."""

    r: int
    s: int
    e: "KnotExpr"

    def __post_init__(self):
        if self.r == 0 or gcd(self.r, self.s) != 1:
            raise ExprError(f"cable({self.r},{self.s},...): parameters must be coprime and r != 0")

    def __str__(self) -> str:
        return f"cable({self.r},{self.s},{self.e})"


@dataclass(frozen=True)
class Whitehead:
    e: "KnotExpr"
    n: int

    def __str__(self) -> str:
        return f"wh({self.e},{self.n})"


@dataclass(frozen=True)
class Satellite:
    pattern: "KnotExpr"
    companion: "KnotExpr"
    n: int

    def __str__(self) -> str:
        return f"satellite({self.pattern},{self.companion},{self.n})"


KnotExpr = Union[Unknot, SeifertLeaf, Torus, Mirror, Sum, Cable, Whitehead, Satellite]

TREFOIL = Torus(2, 3)


def whitehead_matrix(n: int) -> SeifertMatrix:
    return SeifertMatrix([[-1, 1], [0, n]])


def _torus_normal(p: int, q: int) -> tuple[int, int, bool] | None:
    """(p, q, mirrored) with 1 < p < q, or None for the unknot."""
    if p < 0:
        p, q = -p, -q
    mirrored = q < 0
    q = abs(q)
    if p <= 1 or q <= 1:
        return None
    return min(p, q), max(p, q), mirrored


def _cable_normal(c: Cable) -> tuple[int, int]:
    return (c.r, c.s) if c.r > 0 else (-c.r, -c.s)


# --- signatures --------------------------------------------------------------------


_ZERO = (0, 0)


def _leaf_value(V: SeifertMatrix, x: Fraction) -> tuple[int, int]:
    if x % 1 == 0:
        return _ZERO
    v = signature_function(V).at(x)
    return v.twice, v.nullity


def _sig(e: KnotExpr, x: Fraction) -> tuple[int, int]:
    """(doubled signature, nullity) at x."""
    if isinstance(e, Unknot):
        return _ZERO
    if isinstance(e, SeifertLeaf):
        return _leaf_value(e.matrix, x)
    if isinstance(e, Torus):
        t = _torus_normal(e.p, e.q)
        if t is None:
            return _ZERO
        p, q, mirrored = t
        twice, null = _leaf_value(torus_seifert_matrix(p, q), x)
        return (-twice if mirrored else twice), null
    if isinstance(e, Mirror):
        twice, null = _sig(e.e, x)
        return -twice, null
    if isinstance(e, Sum):
        a, b = _sig(e.a, x), _sig(e.b, x)
        return a[0] + b[0], a[1] + b[1]
    if isinstance(e, Cable):
        r, s = _cable_normal(e)
        a = _sig(e.e, (r * x) % 1)
        b = _sig(Torus(r, s), x)
        return a[0] + b[0], a[1] + b[1]
    if isinstance(e, Whitehead):
        return _leaf_value(whitehead_matrix(e.n), x)
    if isinstance(e, Satellite):
        a = _sig(e.pattern, x)
        b = _sig(e.companion, (e.n * x) % 1)
        return a[0] + b[0], a[1] + b[1]
    raise TypeError(f"not a knot expression: {e!r}")


def signature_at(e: KnotExpr, x) -> SignatureValue:
    """Levine-Tristram signature of an expression at rational x."""
    if isinstance(x, float):
        raise TypeError("signature is evaluated at exact rationals only")
    x = Fraction(x)
    twice, null = _sig(e, x)
    return SignatureValue(x, twice, null, null > 0)


def _jump_candidates(e: KnotExpr) -> list[Fraction | float]:
    """Every point of (0,1) where the signature function may jump."""
    if isinstance(e, (Unknot,)):
        return []
    if isinstance(e, (SeifertLeaf, Torus, Whitehead)):
        V = seifert_of(e)
        return [j.location for j in signature_function(V).jumps() if j.height_twice]
    if isinstance(e, Mirror):
        return _jump_candidates(e.e)
    if isinstance(e, Sum):
        return _jump_candidates(e.a) + _jump_candidates(e.b)
    if isinstance(e, Cable):
        r, s = _cable_normal(e)
        inner = [(y + k) / r for y in _jump_candidates(e.e) for k in range(r)]
        return inner + _jump_candidates(Torus(r, s))
    if isinstance(e, Satellite):
        n = abs(e.n)
        inner = [(y + k) / n for y in _jump_candidates(e.companion) for k in range(n)] if n else []
        return _jump_candidates(e.pattern) + inner
    raise TypeError(f"not a knot expression: {e!r}")


def jump_points(e: KnotExpr) -> list[Fraction | float]:
    """Sorted, de-duplicated candidate jumps; irrational ones as floats."""
    pts = sorted(set(_jump_candidates(e)), key=float)
    return pts


def signature_step_function(e: KnotExpr):
    """The signature function as an exact ``StepFunction``.

    Raises ``ValueError`` when a jump is irrational.
    """
    from .stepfn import StepFunction

    pts = jump_points(e)
    if any(not isinstance(p, Fraction) for p in pts):
        raise ValueError("signature function has irrational jumps")
    edges = [Fraction(0)] + pts + [Fraction(1)]
    values = [Fraction(_sig(e, (a + b) / 2)[0], 2) for a, b in zip(edges, edges[1:])]
    jumps = [(x, values[k + 1] - values[k]) for k, x in enumerate(pts) if values[k + 1] != values[k]]
    return StepFunction(jumps, start=values[0])


def nonzero_witness(e: KnotExpr) -> Fraction | None:
    """A rational x with sigma(x) != 0, or None if the function vanishes.

    Plateau samples are rational points between consecutive candidate
    jumps; a returned witness is an exact certificate.  ``None`` is exact
    when every jump is rational.
    """
    pts = jump_points(e)
    edges = [0.0] + [float(p) for p in pts] + [1.0]
    for a, b in zip(edges, edges[1:]):
        if b - a <= 0:
            continue
        x = Fraction((a + b) / 2).limit_denominator(1 << 20)
        if not a < x < b:
            x = Fraction((a + b) / 2)
        if _sig(e, x)[0] != 0:
            return x
    return None


# --- Seifert matrices and Alexander polynomials ----------------------------------------


def seifert_of(e: KnotExpr) -> SeifertMatrix | None:
    """A Seifert matrix when the composition rules provide one."""
    if isinstance(e, Unknot):
        return SeifertMatrix.unknot()
    if isinstance(e, SeifertLeaf):
        return e.matrix
    if isinstance(e, Torus):
        t = _torus_normal(e.p, e.q)
        if t is None:
            return SeifertMatrix.unknot()
        V = torus_seifert_matrix(t[0], t[1])
        return V.mirror() if t[2] else V
    if isinstance(e, Mirror):
        V = seifert_of(e.e)
        return None if V is None else V.mirror()
    if isinstance(e, Sum):
        a, b = seifert_of(e.a), seifert_of(e.b)
        if a is None or b is None:
            return None
        return SeifertMatrix(block_diag(a.V, b.V))
    if isinstance(e, Whitehead):
        return whitehead_matrix(e.n)
    if isinstance(e, Cable):
        r, _ = _cable_normal(e)
        return seifert_of(e.e) if r == 1 else None
    return None


def torus_alexander(p: int, q: int) -> LaurentPoly:
    """(t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)), centred."""
    t = _torus_normal(p, q)
    if t is None:
        return LaurentPoly([1])
    p, q, _ = t
    num = (Poly.monomial(p * q) - 1) * Poly([-1, 1])
    den = (Poly.monomial(p) - 1) * (Poly.monomial(q) - 1)
    return LaurentPoly(num.exact_div(den)).centered()


def _normal(d: LaurentPoly) -> LaurentPoly:
    return d.centered().with_positive_lead()


def alexander_of(e: KnotExpr) -> LaurentPoly:
    if isinstance(e, Unknot):
        return LaurentPoly([1])
    if isinstance(e, SeifertLeaf):
        return alexander_polynomial(e.matrix)
    if isinstance(e, Torus):
        return torus_alexander(e.p, e.q)
    if isinstance(e, Mirror):
        return alexander_of(e.e)
    if isinstance(e, Sum):
        return _normal(alexander_of(e.a) * alexander_of(e.b))
    if isinstance(e, Cable):
        r, s = _cable_normal(e)
        return _normal(alexander_of(e.e).compose_power(r) * torus_alexander(r, s))
    if isinstance(e, Whitehead):
        return alexander_polynomial(whitehead_matrix(e.n))
    if isinstance(e, Satellite):
        return _normal(alexander_of(e.pattern) * alexander_of(e.companion).compose_power(e.n))
    raise TypeError(f"not a knot expression: {e!r}")


# --- tau and genus -----------------------------------------------------------------------


@dataclass(frozen=True)
class TauResult:
    value: int | None
    genus: int | None
    trace: tuple[str, ...] = field(default=())


def _is_unknot(e: KnotExpr) -> bool:
    if isinstance(e, Unknot):
        return True
    if isinstance(e, Torus):
        return _torus_normal(e.p, e.q) is None
    if isinstance(e, Mirror):
        return _is_unknot(e.e)
    if isinstance(e, Sum):
        return _is_unknot(e.a) and _is_unknot(e.b)
    if isinstance(e, Cable):
        r, _ = _cable_normal(e)
        return r == 1 and _is_unknot(e.e)
    if isinstance(e, Whitehead):
        return e.n == 0 and _is_unknot(e.e)
    return False


def tau_of(e: KnotExpr) -> TauResult:
    """tau and genus from the composition rules, with a rule trace."""
    trace: list[str] = []
    tau, genus = _tau(e, trace)
    return TauResult(tau, genus, tuple(trace))


def _tau(e: KnotExpr, trace: list[str]) -> tuple[int | None, int | None]:
    if _is_unknot(e):
        trace.append(f"{e}: unknot, tau = 0, genus = 0")
        return 0, 0
    if isinstance(e, Torus):
        p, q, mirrored = _torus_normal(e.p, e.q)
        g = (p - 1) * (q - 1) // 2
        t = -g if mirrored else g
        trace.append(f"{e}: torus knot, tau = {t}, genus = {g}")
        return t, g
    if isinstance(e, SeifertLeaf):
        trace.append(f"{e}: no rule gives tau or genus of a bare Seifert matrix")
        return None, None
    if isinstance(e, Mirror):
        t, g = _tau(e.e, trace)
        t = None if t is None else -t
        trace.append(f"{e}: mirror negates tau, tau = {t}")
        return t, g
    if isinstance(e, Sum):
        ta, ga = _tau(e.a, trace)
        tb, gb = _tau(e.b, trace)
        t = None if ta is None or tb is None else ta + tb
        g = None if ga is None or gb is None else ga + gb
        trace.append(f"{e}: additivity, tau = {t}, genus = {g}")
        return t, g
    if isinstance(e, Whitehead):
        tj, _ = _tau(e.e, trace)
        if tj is not None and e.n < 2 * tj:
            trace.append(f"{e}: double with t = {e.n} < 2 tau = {2 * tj}, tau = 1, genus = 1")
            return 1, 1
        why = "tau of companion unknown" if tj is None else f"t = {e.n} >= 2 tau = {2 * tj}"
        trace.append(f"{e}: doubling rule needs t < 2 tau(J); {why}; genus = 1")
        return None, 1
    if isinstance(e, Cable):
        r, s = _cable_normal(e)
        tj, gj = _tau(e.e, trace)
        g = None
        if gj is not None:
            g = (r - 1) * (abs(s) - 1) // 2 + r * gj
        if (s - 1) % r != 0:
            trace.append(f"{e}: cable rule needs s = rn + 1; got ({r},{s})")
            return None, g
        n = (s - 1) // r
        if tj is None or gj is None or tj != gj:
            trace.append(f"{e}: cable rule needs tau(J) = genus(J); have tau = {tj}, genus = {gj}")
            return None, g
        t = r * tj + r * n * (r - 1) // 2 + r - 1
        trace.append(f"{e}: cable rule with s = {r}, n = {n}, tau = {t}")
        return t, g
    if isinstance(e, Satellite):
        trace.append(f"{e}: no tau rule for general satellites")
        return None, None
    raise TypeError(f"not a knot expression: {e!r}")


# --- parser ---------------------------------------------------------------------------------


_TOKEN = re.compile(r"\s*(?:(-?\d+)|([a-z]+)|(.))")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok is not None and not tok.isspace():
            out.append(tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input, expected {want or 'token'}")
        if want is not None and tok != want:
            raise ParseError(f"expected {want!r}, got {tok!r}")
        self.i += 1
        return tok

    def integer(self) -> int:
        tok = self.take()
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"expected integer, got {tok!r}") from None

    def matrix(self) -> list[list[int]]:
        self.take("[")
        rows = []
        if self.peek() == "]":
            self.take("]")
            return rows
        while True:
            self.take("[")
            row = []
            if self.peek() != "]":
                row.append(self.integer())
                while self.peek() == ",":
                    self.take(",")
                    row.append(self.integer())
            self.take("]")
            rows.append(row)
            if self.peek() == ",":
                self.take(",")
                continue
            self.take("]")
            return rows

    def expr(self) -> KnotExpr:
        name = self.take()
        if name == "unknot":
            return Unknot()
        self.take("(")
        if name == "torus":
            p = self.integer()
            self.take(",")
            q = self.integer()
            out = Torus(p, q)
        elif name == "seifert":
            rows = self.matrix()
            if any(len(r) != len(rows) for r in rows):
                raise ParseError("Seifert matrix must be square")
            out = SeifertLeaf(rows)
        elif name == "mirror":
            out = Mirror(self.expr())
        elif name == "sum":
            a = self.expr()
            self.take(",")
            out = Sum(a, self.expr())
        elif name == "cable":
            r = self.integer()
            self.take(",")
            s = self.integer()
            self.take(",")
            out = Cable(r, s, self.expr())
        elif name == "wh":
            a = self.expr()
            self.take(",")
            out = Whitehead(a, self.integer())
        elif name == "satellite":
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take(",")
            out = Satellite(a, b, self.integer())
        else:
            raise ParseError(f"unknown constructor {name!r}")
        self.take(")")
        return out


def parse(text: str) -> KnotExpr:
    """Parse the expression grammar; raises ``ParseError`` on bad input."""
    p = _Parser(text)
    try:
        e = p.expr()
    except ParseError:
        raise
    except ValueError as exc:  # invalid parameters, bad Seifert matrix
        raise ParseError(str(exc)) from exc
    if p.peek() is not None:
        raise ParseError(f"trailing input at {p.peek()!r}")
    return e

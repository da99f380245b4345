"""Step functions on [0, 1] with rational jumps.

Values at a jump are the average of the one-sided limits.  A function is
stored as the value on its first open piece plus a sorted list of
``(location, height)`` pairs; everything is exact.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable

from .formatting import format_rational


@dataclass(frozen=True)
class StepFunction:
    jumps: tuple[tuple[Fraction, Fraction], ...]
    start: Fraction

    def __init__(self, jumps: Iterable[tuple] = (), start=0):
        merged: dict[Fraction, Fraction] = {}
        for x, h in jumps:
            x, h = Fraction(x), Fraction(h)
            if not 0 < x < 1:
                raise ValueError(f"jump location {x} outside (0, 1)")
            merged[x] = merged.get(x, Fraction(0)) + h
        js = tuple(sorted((x, h) for x, h in merged.items() if h != 0))
        object.__setattr__(self, "jumps", js)
        object.__setattr__(self, "start", Fraction(start))
        # prefix[k] = value just after the k-th jump
        pre = [self.start]
        for _, h in js:
            pre.append(pre[-1] + h)
        object.__setattr__(self, "_locs", [x for x, _ in js])
        object.__setattr__(self, "_prefix", pre)

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls()

    @property
    def locations(self) -> list[Fraction]:
        return list(self._locs)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        k = bisect_left(self._locs, x)
        v = self._prefix[k]
        if k < len(self._locs) and self._locs[k] == x:
            v += self.jumps[k][1] / 2
        return v

    def plateau_values(self) -> list[Fraction]:
        """Values on the open pieces, left to right."""
        return list(self._prefix)

    def __add__(self, other: "StepFunction") -> "StepFunction":
        return StepFunction(self.jumps + other.jumps, self.start + other.start)

    def __neg__(self) -> "StepFunction":
        return self.scale(-1)

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        return self + (-other)

    def scale(self, c) -> "StepFunction":
        c = Fraction(c)
        return StepFunction([(x, c * h) for x, h in self.jumps], c * self.start)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self.jumps == other.jumps and self.start == other.start

    def __hash__(self):
        return hash((self.jumps, self.start))

    def is_zero(self) -> bool:
        return not self.jumps and self.start == 0

    def integral(self) -> Fraction:
        edges = [Fraction(0)] + self._locs + [Fraction(1)]
        return sum(((b - a) * v for a, b, v in zip(edges, edges[1:], self._prefix)), Fraction(0))

    def is_symmetric(self) -> bool:
        """f(x) = f(1 - x) everywhere."""
        if self.start != self._prefix[-1]:
            return False
        mirrored = StepFunction([(1 - x, -h) for x, h in self.jumps], self._prefix[-1])
        return mirrored == self

    def __repr__(self) -> str:
        js = ", ".join(f"({format_rational(x)}, {format_rational(h)})" for x, h in self.jumps)
        return f"StepFunction([{js}], start={format_rational(self.start)})"

    # --- emitters ---

    def sample_points(self) -> list[Fraction]:
        """Jump points and plateau midpoints, ascending."""
        edges = [Fraction(0)] + self._locs + [Fraction(1)]
        pts = []
        for k, (a, b) in enumerate(zip(edges, edges[1:])):
            if k:
                pts.append(a)
            pts.append((a + b) / 2)
        return pts

    def to_csv(self) -> str:
        lines = ["x,value"]
        for x in self.sample_points():
            lines.append(f"{format_rational(x)},{format_rational(self(x))}")
        return "\n".join(lines) + "\n"

    def to_svg(self, width: int = 480, height: int = 240, title: str = "") -> str:
        return step_svg(self, width, height, title)


def sigma_p(f: StepFunction, p: int) -> Fraction:
    """Sum of f(i/p) for 0 < i < p."""
    if p < 1:
        raise ValueError("p must be positive")
    return sum((f(Fraction(i, p)) for i in range(1, p)), Fraction(0))


def chi(a) -> StepFunction:
    """1 on [0, a), 1/2 at a, 0 on (a, 1]."""
    return StepFunction([(a, -1)], start=1)


def basis_s(a) -> StepFunction:
    """S_a = chi_{1-a} - chi_a: 1 on (a, 1-a)."""
    a = Fraction(a)
    if not 0 < a < Fraction(1, 2):
        raise ValueError(f"S_a needs 0 < a < 1/2, got {a}")
    return StepFunction([(a, 1), (1 - a, -1)])


def frac(x: Fraction) -> Fraction:
    return x - floor(x)


def f_p(p: int, a) -> Fraction:
    """2<pa> - 1, or 0 when pa is an integer."""
    pa = p * Fraction(a)
    if pa.denominator == 1:
        return Fraction(0)
    return 2 * frac(pa) - 1


def sigma_chi(p: int, a) -> Fraction:
    """Closed form for sigma_p(chi_a)."""
    pa = p * Fraction(a)
    return Fraction(floor(pa)) - (Fraction(1, 2) if pa.denominator == 1 else 0)


def sigma_s(p: int, a) -> Fraction:
    """Closed form floor(p(1-a)) - floor(pa) for sigma_p(S_a)."""
    a = Fraction(a)
    return Fraction(floor(p * (1 - a)) - floor(p * a))


def decompose(f: StepFunction) -> list[tuple[Fraction, Fraction]]:
    """Coefficients (c_i, a_i) with f = sum c_i S_{a_i}, a_i ascending."""
    if not f.is_symmetric() or f.start != 0:
        raise ValueError("only symmetric step functions vanishing at 0 decompose over S_a")
    return [(h, x) for x, h in f.jumps if x < Fraction(1, 2)]


def reconstruct(terms: Iterable[tuple]) -> StepFunction:
    out = StepFunction()
    for c, a in terms:
        out = out + basis_s(a).scale(c)
    return out


def step_svg(f: StepFunction, width: int = 480, height: int = 240, title: str = "") -> str:
    """SVG 1.1 step plot on [0,1] x [min, max] with jump points marked."""
    pad = 30
    vals = f.plateau_values()
    lo, hi = min(vals + [Fraction(0)]), max(vals + [Fraction(0)])
    if lo == hi:
        lo, hi = lo - 1, hi + 1
    w, h = width - 2 * pad, height - 2 * pad

    def px(x) -> str:
        return f"{pad + float(x) * w:.3f}"

    def py(y) -> str:
        return f"{pad + float((hi - Fraction(y)) / (hi - lo)) * h:.3f}"

    edges = [Fraction(0)] + f.locations + [Fraction(1)]
    path = []
    for k, (a, b) in enumerate(zip(edges, edges[1:])):
        path.append(("M" if k == 0 else "L") + f"{px(a)},{py(vals[k])}")
        path.append(f"L{px(b)},{py(vals[k])}")
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">',
    ]
    if title:
        out.append(f'<title>{_escape(title)}</title>')
    out.append(
        f'<line x1="{px(0)}" y1="{py(0)}" x2="{px(1)}" y2="{py(0)}" stroke="#999" stroke-width="1"/>'
    )
    out.append(f'<line x1="{px(0)}" y1="{py(lo)}" x2="{px(0)}" y2="{py(hi)}" stroke="#999" stroke-width="1"/>')
    out.append(f'<path d="{" ".join(path)}" fill="none" stroke="black" stroke-width="2"/>')
    for x in f.locations:
        out.append(f'<circle cx="{px(x)}" cy="{py(f(x))}" r="3" fill="black"/>')
    out.append(f'<text x="{px(0)}" y="{height - 8}" font-size="11">0</text>')
    out.append(f'<text x="{px(1)}" y="{height - 8}" font-size="11">1</text>')
    out.append(f'<text x="2" y="{py(hi)}" font-size="11">{format_rational(hi)}</text>')
    out.append(f'<text x="2" y="{py(lo)}" font-size="11">{format_rational(lo)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")

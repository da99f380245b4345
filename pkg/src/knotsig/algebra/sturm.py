"""Real root isolation by Sturm sequences, exact over Q."""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, squarefree_part


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return [s for s in seq if not s.is_zero()]


def sign_variations(seq: list[Poly], x) -> int:
    signs = [s(x) for s in seq]
    signs = [v for v in signs if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a < 0) != (b < 0))


def count_roots(p: Poly, a, b, seq: list[Poly] | None = None) -> int:
    """Number of distinct real roots of p in the half-open interval (a, b]."""
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    seq = seq if seq is not None else sturm_sequence(squarefree_part(p))
    return sign_variations(seq, Fraction(a)) - sign_variations(seq, Fraction(b))


def isolate_roots(p: Poly, a, b) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for the distinct roots of p in (a, b).

    A degenerate interval ``(r, r)`` is an exact rational root.  Otherwise
    ``p`` is nonzero at both endpoints and has exactly one root strictly
    inside.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    a, b = Fraction(a), Fraction(b)
    q = squarefree_part(p)
    if q.degree < 1:
        return []
    seq = sturm_sequence(q)
    out: list[tuple[Fraction, Fraction]] = []

    def open_count(lo, hi):
        return count_roots(q, lo, hi, seq) - (1 if q(hi) == 0 else 0)

    stack = [(a, b)]
    while stack:
        lo, hi = stack.pop()
        n = open_count(lo, hi)
        if n == 0:
            continue
        mid = (lo + hi) / 2
        if n == 1 and q(mid) != 0:
            # keep bisecting until the root is bracketed by a sign change
            if q(lo) != 0 and q(hi) != 0 and (q(lo) < 0) != (q(hi) < 0):
                out.append((lo, hi))
                continue
        if q(mid) == 0:
            out.append((mid, mid))
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def refine_root(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Halve an isolating interval (sign change at the ends) once."""
    if lo == hi:
        return lo, hi
    mid = (lo + hi) / 2
    v = p(mid)
    if v == 0:
        return mid, mid
    if (p(lo) < 0) != (v < 0):
        return lo, mid
    return mid, hi

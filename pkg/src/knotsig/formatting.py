"""Exact-value formatting shared by the CSV, JSON and text emitters."""

from __future__ import annotations

from fractions import Fraction


def format_rational(x) -> str:
    """``"a/b"`` for non-integers, plain decimal otherwise."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"j/p"`` or an integer; floats are rejected."""
    text = text.strip()
    if any(c in text for c in ".eE"):
        raise ValueError(f"expected an exact rational like 1/3, got {text!r}")
    return Fraction(text)

"""Inertia of Hermitian matrices over cyclotomic fields.

Congruence diagonalisation (a symmetric LDL* with pivot repair), so the
signs of the diagonal are the signs of real field elements, each decided
by ``CycloElement.sign``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CycloElement


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    zero: int

    @property
    def signature(self) -> int:
        return self.positive - self.negative

    @property
    def rank(self) -> int:
        return self.positive + self.negative


def hermitian_inertia(h: list[list[CycloElement]]) -> Inertia:
    n = len(h)
    a = [list(r) for r in h]
    pos = neg = 0
    while a:
        n = len(a)
        k = next((i for i in range(n) if not a[i][i].is_zero()), None)
        if k is None:
            hit = next(((i, j) for i in range(n) for j in range(n) if not a[i][j].is_zero()), None)
            if hit is None:
                break
            i, j = hit
            # row_i += c row_j, col_i += conj(c) col_j; new a_ii = 2 Re(c a_ji)
            F = a[i][j].field
            c = F.one()
            if (a[j][i] + a[i][j]).is_zero():
                # a_ij purely imaginary; any non-real unit works
                c = F.zeta_power(1)
            cb = c.conj()
            a[i] = [x + c * y for x, y in zip(a[i], a[j])]
            for r in a:
                r[i] = r[i] + cb * r[j]
            k = i
        p = a[k][k]
        s = p.sign()
        if s > 0:
            pos += 1
        else:
            neg += 1
        pinv = p.inverse()
        rest = [i for i in range(n) if i != k]
        col = [a[i][k] for i in rest]
        row = [a[k][j] for j in rest]
        a = [
            [a[i][j] - col[ii] * pinv * row[jj] for jj, j in enumerate(rest)]
            for ii, i in enumerate(rest)
        ]
    total = len(h)
    return Inertia(pos, neg, total - pos - neg)


def field_rank(h: list[list[CycloElement]]) -> int:
    """Rank by plain Gaussian elimination; no sign decisions needed."""
    a = [list(r) for r in h]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if not a[i][c].is_zero()), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = a[rank][c].inverse()
        for i in range(rank + 1, len(a)):
            if not a[i][c].is_zero():
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank

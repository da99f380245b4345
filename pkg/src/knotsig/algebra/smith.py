"""Smith normal form over the integers, with unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import Matrix


@dataclass(frozen=True)
class SmithForm:
    """``diagonal == left @ matrix @ right`` with ``left``, ``right`` unimodular.

    ``factors`` lists the diagonal (length ``min(rows, cols)``); each entry
    divides the next, and zeros (free summands) come last.
    """

    factors: tuple[int, ...]
    left: Matrix
    right: Matrix
    left_inverse: Matrix
    right_inverse: Matrix
    diagonal: Matrix


def smith_normal_form(m: Matrix) -> SmithForm:
    n, k = m.shape
    a = [list(r) for r in m.rows]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    Ui = [[int(i == j) for j in range(n)] for i in range(n)]
    W = [[int(i == j) for j in range(k)] for i in range(k)]
    Wi = [[int(i == j) for j in range(k)] for i in range(k)]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i != j:
            for r in a:
                r[i], r[j] = r[j], r[i]
            for r in W:
                r[i], r[j] = r[j], r[i]
            Wi[i], Wi[j] = Wi[j], Wi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]
            for r in Ui:
                r[src] -= q * r[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if q:
            for r in a:
                r[dst] += q * r[src]
            for r in W:
                r[dst] += q * r[src]
            Wi[src] = [x - q * y for x, y in zip(Wi[src], Wi[dst])]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    for t in range(min(n, k)):
        best = None
        for i in range(t, n):
            for j in range(t, k):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, n):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, k):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
            col = [i for i in range(t + 1, n) if a[i][t]]
            row = [j for j in range(t + 1, k) if a[t][j]]
            if col or row:
                # a smaller remainder exists; move it to the pivot and repeat
                cand = [(abs(a[i][t]), i, t) for i in col] + [(abs(a[t][j]), t, j) for j in row]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            p = a[t][t]
            for i in range(t + 1, n):
                if any(a[i][j] % p for j in range(t + 1, k)):
                    add_row(t, i, 1)
                    dirty = True
                    break
            if not dirty:
                break
        if a[t][t] < 0:
            negate_row(t)

    diag = tuple(a[i][i] for i in range(min(n, k)))
    return SmithForm(
        factors=diag,
        left=Matrix(U, n),
        right=Matrix(W, k),
        left_inverse=Matrix(Ui, n),
        right_inverse=Matrix(Wi, k),
        diagonal=Matrix(a, k),
    )


def invariant_factors(m: Matrix) -> tuple[int, ...]:
    return smith_normal_form(m).factors

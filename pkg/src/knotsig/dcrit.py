"""The fractional-part determinant D(d) and coefficient recovery.

For odd d > 1 the matrix has entries F_i(j/d) = 2<ij/d> - 1 (0 when d | ij),
1 <= i, j <= (d-1)/2.  Scaling by d gives the integer matrix
2(ij mod d) - d, so determinants go through Bareiss.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import sympy

from .algebra import Matrix, bareiss_determinant, solve_rational


class DcritError(ValueError):
    pass


def _check_d(d: int) -> int:
    if d <= 1 or d % 2 == 0:
        raise DcritError(f"d must be an odd integer > 1, got {d}")
    return (d - 1) // 2


def scaled_entry(i: int, j: int, d: int) -> int:
    r = i * j % d
    return 0 if r == 0 else 2 * r - d


def scaled_matrix(d: int) -> Matrix:
    """d times the D(d) matrix; integer entries."""
    n = _check_d(d)
    return Matrix([[scaled_entry(i, j, d) for j in range(1, n + 1)] for i in range(1, n + 1)], n)


def d_matrix(d: int) -> Matrix:
    n = _check_d(d)
    return Matrix(
        [[Fraction(scaled_entry(i, j, d), d) for j in range(1, n + 1)] for i in range(1, n + 1)],
        n,
    )


def d_determinant(d: int) -> Fraction:
    n = _check_d(d)
    return Fraction(bareiss_determinant(scaled_matrix(d)), d**n)


def _scan_one(d: int) -> tuple[int, bool, int]:
    det = d_determinant(d)
    return d, det == 0, len(str(abs(det.numerator)))


def scan_rows(d_max: int, jobs: int = 1) -> Iterator[tuple[int, bool, int]]:
    """(d, is_zero, digits of numerator) for odd 3 <= d <= d_max, ascending."""
    ds = list(range(3, d_max + 1, 2))
    if jobs <= 1:
        yield from map(_scan_one, ds)
        return
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        # map preserves input order
        yield from ex.map(_scan_one, ds, chunksize=4)


def conjecture_scan(d_max: int, jobs: int = 1) -> list[int]:
    """Odd d <= d_max with D(d) = 0 (expected empty)."""
    if d_max < 3:
        raise DcritError("d_max must be at least 3")
    return [d for d, zero, _ in scan_rows(d_max, jobs) if zero]


def class_number_ratio(s: int) -> Fraction:
    """|D(s)| s / 2^((s-3)/2) for an odd prime s."""
    if s < 3 or not sympy.isprime(s):
        raise DcritError(f"s must be an odd prime, got {s}")
    return abs(d_determinant(s)) * s / 2 ** ((s - 3) // 2)


def representative(i: int, d: int) -> int:
    """An odd positive p with p = i mod d."""
    if i == 0:
        return d
    return i if i % 2 else i + d


def recover_coefficients(
    d: int,
    sums: Sequence[tuple[int, Fraction]] | dict[int, Fraction],
    integral: Fraction = Fraction(0),
) -> list[Fraction] | None:
    """Solve sum_j a_j F_i(j/d) = Sigma_{p(i)} - p(i) * integral for a_j.

    ``sums`` gives one odd p(i) = i mod d per 1 <= i <= (d-1)/2 with its
    Sigma_p value.  Returns the coefficients of S_{j/d}, or None when the
    system is singular.
    """
    n = _check_d(d)
    items = list(sums.items()) if isinstance(sums, dict) else list(sums)
    by_class: dict[int, tuple[int, Fraction]] = {}
    for p, v in items:
        if p % 2 == 0:
            raise DcritError(f"representative p = {p} must be odd")
        i = p % d
        if not 1 <= i <= n:
            continue
        by_class[i] = (p, Fraction(v))
    missing = [i for i in range(1, n + 1) if i not in by_class]
    if missing:
        raise DcritError(f"no representative p = i mod {d} supplied for i in {missing}")
    A = scaled_matrix(d)
    rhs = [d * (by_class[i][1] - by_class[i][0] * Fraction(integral)) for i in range(1, n + 1)]
    return solve_rational(A, rhs)


def forward_sums(d: int, coeffs: Iterable, reps: Sequence[int] | None = None) -> list[tuple[int, Fraction]]:
    """Sigma_{p(i)} of sum_j c_j S_{j/d}, for building test systems."""
    from .stepfn import reconstruct, sigma_p

    n = _check_d(d)
    f = reconstruct((c, Fraction(j, d)) for j, c in enumerate(coeffs, start=1) if c)
    reps = reps or [representative(i, d) for i in range(1, n + 1)]
    return [(p, sigma_p(f, p)) for p in reps]

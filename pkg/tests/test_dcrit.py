from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotsig.algebra import cofactor_determinant
from knotsig.dcrit import (
    DcritError,
    class_number_ratio,
    conjecture_scan,
    d_determinant,
    d_matrix,
    forward_sums,
    recover_coefficients,
    representative,
    scan_rows,
)
from knotsig.stepfn import f_p, reconstruct

F = Fraction


def test_small_values():
    assert d_determinant(3) == F(-1, 3)
    assert d_determinant(5) == F(-2, 5)
    assert d_determinant(7) == F(4, 7)


@pytest.mark.parametrize("d", [3, 5, 7, 9, 11, 13])
def test_bareiss_matches_cofactor(d):
    n = (d - 1) // 2
    # entries built independently from the F_p values
    rows = [[f_p(i, F(j, d)) for j in range(1, n + 1)] for i in range(1, n + 1)]
    assert d_matrix(d).tolist() == rows
    assert d_determinant(d) == cofactor_determinant(rows)


@pytest.mark.parametrize("d", [5, 7, 9, 15])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_recovery_round_trip(d, data):
    n = (d - 1) // 2
    coeffs = data.draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n))
    shift = data.draw(st.integers(0, 3))
    reps = [representative(i, d) + 2 * d * shift for i in range(1, n + 1)]
    sums = forward_sums(d, coeffs, reps)
    f = reconstruct((c, F(j, d)) for j, c in enumerate(coeffs, start=1) if c)
    got = recover_coefficients(d, sums, integral=f.integral())
    assert got == [F(c) for c in coeffs]
    assert recover_coefficients(d, dict(sums), integral=f.integral()) == got


def test_recovery_errors():
    with pytest.raises(DcritError):
        recover_coefficients(5, [(1, F(0))])
    with pytest.raises(DcritError):
        recover_coefficients(5, [(2, F(0)), (1, F(0))])


def test_class_number_ratios():
    for s in (3, 5, 7, 11, 13, 17, 19):
        assert class_number_ratio(s) == 1
        assert abs(d_determinant(s)) == F(2 ** ((s - 3) // 2), s)
    assert class_number_ratio(23) == 3
    with pytest.raises(DcritError):
        class_number_ratio(9)


def test_scan_small_and_parallel_order():
    assert conjecture_scan(61) == []
    serial = list(scan_rows(41, 1))
    parallel = list(scan_rows(41, 2))
    assert serial == parallel
    assert [d for d, _, _ in serial] == list(range(3, 42, 2))


def test_bad_d():
    for d in (1, 4, 0, -3):
        with pytest.raises(DcritError):
            d_determinant(d)

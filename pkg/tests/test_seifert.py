import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import random_seifert, rationals_01, seifert_matrices
from knotsig.algebra import LaurentPoly, bareiss_determinant, cyclotomic_poly
from knotsig.seifert import (
    SeifertError,
    SeifertMatrix,
    alexander_polynomial,
    arf,
    arf_bruteforce,
    fox_milnor,
    m_parameter,
    signature_at,
    signature_function,
    torus_seifert_matrix,
    witt_representative,
)

TREFOIL = SeifertMatrix([[-1, 1], [0, -1]])
FIVE_TWO = SeifertMatrix([[1, 1], [0, 2]])
WH2 = SeifertMatrix([[-1, 1], [0, 2]])


def numeric_signature(V: SeifertMatrix, x: Fraction, prec: int = 256):
    """Signature and smallest |eigenvalue| of the form at e^{2 pi i x}, by mpmath."""
    with mpmath.workprec(prec):
        w = mpmath.expj(2 * mpmath.pi * mpmath.mpf(x.numerator) / x.denominator)
        n = V.size
        A = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                A[i, j] = (1 - w) * V.V[i, j] + (1 - mpmath.conj(w)) * V.V[j, i]
        ev = mpmath.eigh(A, eigvals_only=True)
        vals = [ev[k] for k in range(n)]
        sig = sum(1 for v in vals if v > 0) - sum(1 for v in vals if v < 0)
        return sig, min(abs(v) for v in vals)


def test_validation():
    with pytest.raises(SeifertError):
        SeifertMatrix([[1, 3], [0, 4]])  # det(V - V^T) = 9
    with pytest.raises(SeifertError):
        SeifertMatrix([[1]])
    with pytest.raises(SeifertError):
        SeifertMatrix([[0, 2], [0, 0]])
    with pytest.raises(SeifertError):
        SeifertMatrix([[Fraction(1, 2), 1], [0, 0]])


def test_trefoil():
    d = alexander_polynomial(TREFOIL)
    assert d == LaurentPoly([1, -1, 1], low=-1)
    sf = signature_function(TREFOIL)
    assert sf.plateaus == [0, -2]
    assert [j.theta for j in sf.jumps()] == [Fraction(1, 6), Fraction(5, 6)]
    v = signature_at(TREFOIL, Fraction(1, 2))
    assert (v.twice, v.nullity) == (-4, 0)
    v = signature_at(TREFOIL, Fraction(1, 6))
    assert (v.twice, v.nullity, v.is_jump) == (-2, 1, True)
    assert v.signature == Fraction(-1)
    assert sf.integral() == Fraction(-4, 3)


def test_torus_matrices():
    assert signature_function(torus_seifert_matrix(3, 4)).plateaus == [0, -2, -4, -6]
    d = alexander_polynomial(torus_seifert_matrix(2, 5))
    assert d == LaurentPoly([1, -1, 1, -1, 1], low=-2)


def test_five_two_irrational_jumps():
    d = alexander_polynomial(FIVE_TWO)
    assert d == LaurentPoly([2, -3, 2], low=-1)
    sf = signature_function(FIVE_TWO)
    assert sf.plateaus == [0, 2]
    assert sf.has_irrational_jumps()
    j = sf.jumps()[0]
    # 2(t + 1/t) - 3 = 0, so cos(2 pi x) = 3/4
    assert abs(j.approx - float(mpmath.acos(mpmath.mpf(3) / 4) / (2 * mpmath.pi))) < 1e-12
    assert sf.integral() is None


def test_whitehead_double_matrix():
    assert alexander_polynomial(WH2) == LaurentPoly([2, -5, 2], low=-1)
    assert m_parameter(WH2) == 1
    assert arf(WH2) == 0
    assert signature_function(WH2).is_zero()
    rep = witt_representative(WH2, 1, 7)
    assert (rep.signature, rep.rank, rep.nullity) == (0, 2, 0)
    fm = fox_milnor(alexander_polynomial(WH2))
    assert fm.passes and fm.decided
    f = fm.factor
    prod = f * LaurentPoly(list(reversed(f.poly.coeffs)), low=-f.high)
    assert prod.centered().with_positive_lead() == alexander_polynomial(WH2)


def test_value_at_zero():
    for V in (TREFOIL, FIVE_TWO, torus_seifert_matrix(3, 4)):
        v = signature_at(V, 0)
        assert v.twice == 0 and v.nullity == V.size
        assert signature_at(V, 1).twice == 0


def test_rejects_float():
    with pytest.raises(TypeError):
        signature_at(TREFOIL, 0.5)


@settings(max_examples=300, deadline=None)
@given(seifert_matrices(max_genus=2), rationals_01(90))
def test_symmetry(V, x):
    a, b = signature_at(V, x), signature_at(V, 1 - x)
    assert (a.twice, a.nullity) == (b.twice, b.nullity)


@settings(max_examples=500, deadline=None)
@given(seifert_matrices(max_genus=2, span=3), st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]), st.data())
def test_signature_matches_numeric_oracle(V, p, data):
    j = data.draw(st.integers(1, p - 1))
    x = Fraction(j, p)
    sig, gap = numeric_signature(V, x)
    assume(gap > mpmath.mpf(10) ** -40)
    v = signature_at(V, x)
    assert v.nullity == 0
    assert v.twice == 2 * sig


@settings(max_examples=200, deadline=None)
@given(seifert_matrices(max_genus=2), st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19, 23]), st.data())
def test_no_jumps_at_prime_denominators(V, p, data):
    d = alexander_polynomial(V).ordinary()
    assume(not cyclotomic_poly(p).divides(d))
    j = data.draw(st.integers(1, p - 1))
    assert signature_at(V, Fraction(j, p)).nullity == 0


@settings(max_examples=200, deadline=None)
@given(seifert_matrices(max_genus=3))
def test_alexander_normalization(V):
    d = alexander_polynomial(V)
    assert abs(d(1)) == 1
    assert d.conway_normalized()(1) == 1
    assert d.is_symmetric()
    # det(V - k V^T) = s k^g Delta(k) at integer points, one fixed sign s
    v = V.V
    g = V.genus
    signs = set()
    for k in range(2, 2 * g + 4):
        num = bareiss_determinant(v - v.T.scale(k))
        val = Fraction(k) ** g * d(Fraction(k))
        assert abs(num) == abs(val)
        if num:
            signs.add(num == val)
    assert len(signs) == 1
    assert bareiss_determinant(v - v.T) == 1


@settings(max_examples=150, deadline=None)
@given(seifert_matrices(max_genus=2, span=3))
def test_arf_matches_bruteforce(V):
    assert arf(V) == arf_bruteforce(V)


@pytest.mark.parametrize("m", range(0, 8))
def test_determinant_of_m_family(m):
    V = SeifertMatrix([[-1, 1], [0, m * (m + 1)]])
    assert m_parameter(V) == m
    assert abs(alexander_polynomial(V)(-1)) == (2 * m + 1) ** 2


@settings(max_examples=100, deadline=None)
@given(seifert_matrices(max_genus=1, span=6))
def test_m_parameter_determinant(V):
    m = m_parameter(V)
    if m is not None:
        assert abs(alexander_polynomial(V)(-1)) == (2 * m + 1) ** 2


def test_fox_milnor_cases():
    trefoil_sq = LaurentPoly([1, -1, 1], low=-1) * LaurentPoly([1, -1, 1], low=-1)
    fm = fox_milnor(trefoil_sq)
    assert fm.passes and fm.factor is not None
    fm = fox_milnor(LaurentPoly([1, -1, 1], low=-1))
    assert not fm.passes and not fm.determinant_is_square
    fig8 = LaurentPoly([-1, 3, -1], low=-1)  # |Delta(-1)| = 5
    assert not fox_milnor(fig8).passes
    # -2t + 5 - 2/t = (2 - t)(2 - 1/t)
    assert fox_milnor(LaurentPoly([-2, 5, -2], low=-1)).passes
    with pytest.raises(ValueError):
        fox_milnor(LaurentPoly([1, 2, 3]))


def test_mirror():
    M = TREFOIL.mirror()
    assert signature_at(M, Fraction(1, 2)).twice == 4
    assert M.mirror() == TREFOIL


def test_step_function_symmetric_when_rational():
    rng = random.Random(5)
    checked = 0
    for _ in range(60):
        V = random_seifert(rng, rng.randint(1, 2))
        sf = signature_function(V)
        if sf.has_irrational_jumps():
            continue
        f = sf.to_step_function()
        assert f.is_symmetric()
        for k in range(1, 40):
            x = Fraction(k, 40)
            assert 2 * f(x) == signature_at(V, x).twice
        checked += 1
    assert checked > 0

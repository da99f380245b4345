from fractions import Fraction
from itertools import combinations, permutations
from math import gcd

import pytest
import sympy
from hypothesis import example, given, settings
from hypothesis import strategies as st

from knotsig.algebra import (
    Const,
    Cos,
    CyclotomicField,
    DimensionError,
    LaurentPoly,
    Matrix,
    Poly,
    Sin,
    bareiss_determinant,
    cofactor_determinant,
    count_roots,
    cyclotomic_poly,
    euler_phi,
    field_rank,
    hermitian_inertia,
    inverse_rational,
    isolate_roots,
    rational_determinant,
    refine_root,
    refine_sign,
    resultant,
    smith_normal_form,
    solve_rational,
    squarefree_part,
    sturm_sequence,
)
from knotsig.algebra.sturm import sign_variations


def leibniz(rows):
    """Permutation-sum determinant; independent of both library routines."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += -prod if inv % 2 else prod
    return total


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
)


@settings(max_examples=1000, deadline=None)
@given(square)
def test_bareiss_matches_cofactor(rows):
    m = Matrix(rows)
    d = bareiss_determinant(m)
    assert d == cofactor_determinant(m)
    assert d == leibniz(rows)


@settings(max_examples=200, deadline=None)
@given(square)
def test_rational_determinant_and_inverse(rows):
    m = Matrix(rows)
    d = rational_determinant(m)
    assert d == leibniz(rows)
    if d != 0:
        inv = inverse_rational(m)
        assert inv @ m == Matrix.identity(len(rows))
        b = [Fraction(i + 1) for i in range(len(rows))]
        x = solve_rational(m, b)
        assert [sum(r[j] * x[j] for j in range(len(rows))) for r in rows] == b


def test_bareiss_rejects_non_square():
    with pytest.raises(DimensionError):
        bareiss_determinant(Matrix([[1, 2, 3], [4, 5, 6]]))


def test_singular_solve_returns_none():
    assert solve_rational(Matrix([[1, 2], [2, 4]]), [1, 1]) is None


def determinantal_factors(rows):
    """Invariant factors d_k / d_{k-1}, d_k the gcd of all k x k minors."""
    n, m = len(rows), len(rows[0])
    divisors = [1]
    for k in range(1, min(n, m) + 1):
        g = 0
        for rs in combinations(range(n), k):
            for cs in combinations(range(m), k):
                g = gcd(g, leibniz([[rows[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        divisors.append(g)
    return [b // a for a, b in zip(divisors, divisors[1:])]


rect = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda s: st.lists(st.lists(st.integers(-9, 9), min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0])
)


@settings(max_examples=300, deadline=None)
@given(rect)
def test_smith_form_properties(rows):
    m = Matrix(rows)
    sf = smith_normal_form(m)
    assert sf.left @ m @ sf.right == sf.diagonal
    assert abs(bareiss_determinant(sf.left)) == 1
    assert abs(bareiss_determinant(sf.right)) == 1
    assert sf.left @ sf.left_inverse == Matrix.identity(m.nrows)
    assert sf.right @ sf.right_inverse == Matrix.identity(m.ncols)
    f = sf.factors
    nz = [d for d in f if d]
    assert all(d > 0 for d in nz)
    assert f[: len(nz)] == tuple(nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert nz == determinantal_factors(rows)
    if m.nrows == m.ncols:
        det = bareiss_determinant(m)
        prod = 1
        for d in f:
            prod *= d
        assert prod == abs(det)


def test_smith_known():
    sf = smith_normal_form(Matrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert sf.factors == (2, 6, 12)


polys = st.lists(st.integers(-6, 6), min_size=2, max_size=7).filter(lambda c: c[-1] != 0)


@settings(max_examples=300, deadline=None)
@given(polys, st.integers(-5, 0), st.integers(1, 5))
@example([0, 0, 1, -1], 0, 1)
def test_sturm_counts_match_intervals(coeffs, a, b):
    p = Poly(coeffs)
    if p.degree < 1:
        return
    ivs = isolate_roots(p, a, b)
    # Sturm's theorem holds at root endpoints only for a squarefree input
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    interior = count_roots(p, a, b) - (1 if p(b) == 0 else 0)
    assert len(ivs) == interior
    assert interior == sign_variations(seq, Fraction(a)) - sign_variations(seq, Fraction(b)) - (
        1 if p(b) == 0 else 0
    )
    # independent root count via sympy
    x = sympy.Symbol("x")
    roots = sympy.Poly(list(reversed(coeffs)), x).real_roots()
    assert len({r for r in roots if a < r < b}) == interior
    for lo, hi in ivs:
        if lo == hi:
            assert p(lo) == 0
        else:
            # isolation is done on the squarefree part
            assert q(lo) * q(hi) < 0
            lo2, hi2 = refine_root(q, lo, hi)
            assert lo <= lo2 < hi2 <= hi and hi2 - lo2 < hi - lo


def test_sturm_known():
    p = Poly([-2, 0, 1])  # x^2 - 2
    ivs = isolate_roots(p, -3, 3)
    assert len(ivs) == 2
    assert all(lo < hi for lo, hi in ivs)


def test_cyclotomic_and_phi():
    assert cyclotomic_poly(6) == Poly([1, -1, 1])
    for n in range(1, 60):
        assert euler_phi(n) == int(sympy.totient(n))
        assert cyclotomic_poly(n).degree == euler_phi(n)
        x = sympy.Symbol("x")
        assert list(reversed([int(c) for c in sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()])) == list(
            cyclotomic_poly(n).coeffs
        )


def test_resultant_oracle():
    x = sympy.Symbol("x")
    pairs = [([1, 0, -2], [-3, 1]), ([1, -1, 1], [1, 1, 1, 1, 1]), ([2, -5, 2], [1, 1, 1])]
    for a, b in pairs:
        expect = sympy.resultant(sympy.Poly(list(reversed(a)), x), sympy.Poly(list(reversed(b)), x))
        assert resultant(Poly(a), Poly(b)) == int(expect)


def test_laurent_normalization():
    d = LaurentPoly([1, -1, 1], low=-1)
    assert d(1) == 1 and d.is_symmetric()
    assert (-d).with_positive_lead() == d


def test_exact_trig_identities():
    assert refine_sign(Cos(Fraction(1, 4))) == 0
    assert refine_sign(Cos(Fraction(1, 6)) - Const(Fraction(1, 2))) == 0
    assert refine_sign(Sin(Fraction(1, 8)) - Cos(Fraction(1, 8))) == 0
    assert refine_sign(Cos(Fraction(1, 5)) + Cos(Fraction(2, 5)) + Const(Fraction(1, 4))) == -1
    assert refine_sign(Cos(Fraction(1, 5)).__mul__(Const(2)) - Const(Fraction(1, 2))) == 1


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 30), st.integers(2, 31), st.integers(-3, 3))
def test_refine_sign_deterministic(j, n, c):
    expr = Cos(Fraction(j, n)) - Const(Fraction(c, 4))
    signs = {refine_sign(expr, start_bits=b) for b in (32, 64, 128, 256)}
    assert len(signs) == 1
    assert refine_sign(expr) == refine_sign(expr)


def test_hermitian_inertia_and_rank():
    F = CyclotomicField(4)
    i = F.zeta_power(1)
    one = F.one()
    h = [[F.scalar(2), i], [-i, F.scalar(2)]]  # eigenvalues 1, 3
    inert = hermitian_inertia(h)
    assert (inert.positive, inert.negative, inert.zero) == (2, 0, 0)
    h2 = [[F.zero(), i], [-i, F.zero()]]  # eigenvalues +-1
    assert hermitian_inertia(h2).signature == 0
    assert field_rank([[one, one], [one, one]]) == 1

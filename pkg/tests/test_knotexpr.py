import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_seifert, rationals_01
from knotsig import seifert
from knotsig.knotexpr import (
    TREFOIL,
    Cable,
    Mirror,
    ParseError,
    Satellite,
    SeifertLeaf,
    Sum,
    Torus,
    Unknot,
    Whitehead,
    alexander_of,
    jump_points,
    nonzero_witness,
    parse,
    seifert_of,
    signature_at,
    signature_step_function,
    tau_of,
    torus_alexander,
)
from knotsig.stepfn import StepFunction

F = Fraction


def lattice_signature_twice(p: int, q: int, x: Fraction) -> int:
    """Twice the signature of T(p, q) at x by counting i/p + j/q in (x, x + 1).

    Points inside count -1, outside +1, on the boundary 0 (the jump average);
    the doubled total is returned.
    """
    total = 0
    for i in range(1, p):
        for j in range(1, q):
            s = F(i, p) + F(j, q)
            if s == x or s == x + 1:
                continue
            total += -2 if x < s < x + 1 else 2
    return total


@pytest.mark.parametrize("r", [3, 5, 7, 9, 11, 13, 15])
def test_torus_lattice_oracle(r):
    V = seifert.torus_seifert_matrix(2, r)
    for j in range(1, 60):
        x = F(j, 60)
        assert seifert.signature_at(V, x).twice == lattice_signature_twice(2, r, x)
        assert signature_at(Torus(2, r), x).twice == lattice_signature_twice(2, r, x)


@pytest.mark.parametrize("pq", [(3, 4), (3, 5), (2, 7)])
def test_torus_lattice_oracle_general(pq):
    p, q = pq
    for j in range(1, 60):
        x = F(j, 60)
        assert signature_at(Torus(p, q), x).twice == lattice_signature_twice(p, q, x)


def test_torus_alexander_matches_matrix():
    for p, q in [(2, 3), (2, 5), (3, 4), (3, 5), (2, 9), (4, 5)]:
        assert torus_alexander(p, q) == seifert.alexander_polynomial(seifert.torus_seifert_matrix(p, q))


def test_torus_normalization():
    assert seifert_of(Torus(3, 2)) == seifert_of(Torus(2, 3))
    assert seifert_of(Torus(2, -3)) == seifert_of(Torus(2, 3)).mirror()
    assert seifert_of(Torus(-2, -3)) == seifert_of(Torus(2, 3))
    assert seifert_of(Torus(1, 7)).size == 0


# --- random expressions ---------------------------------------------------------------

leaf_with_matrix = st.one_of(
    st.just(Unknot()),
    st.sampled_from([Torus(2, 3), Torus(2, -3), Torus(2, 5), Torus(3, 4), Torus(3, -2)]),
    st.integers(0, 2**32 - 1).map(lambda s: SeifertLeaf(random_seifert(random.Random(s), 1).tolist())),
    st.builds(Whitehead, st.sampled_from([TREFOIL, Unknot()]), st.integers(-3, 4)),
)


def _with_matrix(children):
    return st.one_of(
        st.builds(Mirror, children),
        st.builds(Sum, children, children),
        st.builds(lambda s, e: Cable(1, s, e), st.integers(-3, 3), children),
    )


exprs_with_matrix = st.recursive(leaf_with_matrix, _with_matrix, max_leaves=3)


def _any(children):
    return st.one_of(
        st.builds(Mirror, children),
        st.builds(Sum, children, children),
        st.builds(lambda r, s, e: Cable(r, r * s + 1, e), st.integers(2, 3), st.integers(-2, 2), children),
        st.builds(Satellite, children, children, st.integers(-2, 3)),
    )


exprs = st.recursive(leaf_with_matrix, _any, max_leaves=3)


@settings(max_examples=250, deadline=None)
@given(exprs_with_matrix, rationals_01(48))
def test_composition_matches_seifert(e, x):
    V = seifert_of(e)
    assert V is not None
    a = signature_at(e, x)
    b = seifert.signature_at(V, x)
    assert (a.twice, a.nullity) == (b.twice, b.nullity)


@settings(max_examples=150, deadline=None)
@given(exprs, exprs, rationals_01(48))
def test_additivity_and_mirror(a, b, x):
    sa, sb = signature_at(a, x), signature_at(b, x)
    s = signature_at(Sum(a, b), x)
    assert s.twice == sa.twice + sb.twice
    assert signature_at(Mirror(a), x).twice == -sa.twice
    assert signature_at(Sum(a, Mirror(a)), x).twice == 0


@settings(max_examples=150, deadline=None)
@given(exprs)
def test_alexander_at_one(e):
    d = alexander_of(e)
    assert abs(d(1)) == 1
    assert d.conway_normalized()(1) == 1
    assert d.is_symmetric()


@settings(max_examples=100, deadline=None)
@given(exprs_with_matrix)
def test_alexander_composition_matches_seifert(e):
    V = seifert_of(e)
    assert alexander_of(e) == seifert.alexander_polynomial(V)


@settings(max_examples=150, deadline=None)
@given(exprs)
def test_tau_of_slice_sum(e):
    r = tau_of(Sum(e, Mirror(e)))
    single = tau_of(e)
    if single.value is not None:
        assert r.value == 0
    else:
        assert r.value is None and r.trace


@settings(max_examples=100, deadline=None)
@given(exprs)
def test_parse_round_trip(e):
    assert parse(str(e)) == e
    spaced = str(e).replace(",", " , ").replace("(", " ( ")
    assert parse(spaced) == e


def test_parse_examples():
    e = parse("cable(2,-3,torus(2,3))")
    assert e == Cable(2, -3, Torus(2, 3))
    assert str(e) == "cable(2,-3,torus(2,3))"
    assert parse("seifert([[-1,1],[0,2]])") == SeifertLeaf([[-1, 1], [0, 2]])
    assert parse("wh( torus(2,3) , 2 )") == Whitehead(Torus(2, 3), 2)
    assert parse("satellite(unknot,torus(2,3),0)") == Satellite(Unknot(), Torus(2, 3), 0)


@pytest.mark.parametrize(
    "text",
    ["", "torus(2)", "torus(2,3", "cable(2,3)", "sum(unknot)", "foo(1)", "torus(2,3) extra", "seifert([[1,3],[0,4]])",
     "torus(a,b)", "seifert([[1,2],[3]])"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_cable_trefoil_step_function():
    e = Cable(2, -3, TREFOIL)
    f = signature_step_function(e)
    assert [x for x, _ in f.jumps] == [F(1, 12), F(1, 6), F(5, 12), F(7, 12), F(5, 6), F(11, 12)]
    assert f.plateau_values() == [0, -2, 0, 2, 0, -2, 0]
    assert f.integral() == 0
    assert f.is_symmetric()
    assert signature_at(e, F(1, 2)).twice == 4
    assert nonzero_witness(e) is not None


def test_whitehead_signature_vanishes_for_nonnegative_twist():
    for n in range(0, 6):
        assert nonzero_witness(Whitehead(TREFOIL, n)) is None
    assert nonzero_witness(Whitehead(TREFOIL, -1)) is not None


def test_cable_alexander():
    e = Cable(2, -3, TREFOIL)
    assert str(alexander_of(e)) == "t^-3 - t^-2 + 1 - t^2 + t^3"


def test_tau_chain():
    assert tau_of(TREFOIL).value == 1
    inner = Cable(2, -3, Sum(TREFOIL, Whitehead(TREFOIL, 0)))
    assert tau_of(inner).value == 3
    assert tau_of(Whitehead(inner, 2)).value == 1
    j = Cable(2, -3, TREFOIL)
    assert tau_of(Whitehead(Sum(j, j), 2)).value == 1
    assert tau_of(Mirror(TREFOIL)).value == -1


def test_tau_undetermined():
    r = tau_of(Whitehead(Mirror(TREFOIL), 0))
    assert r.value is None and r.genus == 1 and r.trace
    r = tau_of(SeifertLeaf([[-1, 1], [0, 2]]))
    assert r.value is None


def test_jump_points_of_sum_sorted():
    pts = jump_points(Sum(TREFOIL, Torus(2, 5)))
    assert pts == sorted(pts)
    assert F(1, 6) in pts and F(1, 10) in pts


def test_irrational_jumps_refuse_step_function():
    with pytest.raises(ValueError):
        signature_step_function(SeifertLeaf([[1, 1], [0, 2]]))


def test_step_function_agrees_with_pointwise():
    e = Sum(Cable(3, 4, Torus(2, 3)), Mirror(Torus(2, 7)))
    f = signature_step_function(e)
    assert isinstance(f, StepFunction)
    for k in range(1, 84):
        x = F(k, 84)
        assert f(x) == signature_at(e, x).signature

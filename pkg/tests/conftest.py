import random

from hypothesis import strategies as st

from knotsig.algebra import Matrix
from knotsig.seifert import SeifertMatrix


def _unimodular(rng: random.Random, n: int, steps: int = 4) -> Matrix:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return Matrix(rows, n)


def random_seifert(rng: random.Random, genus: int, span: int = 2, mix: bool = True) -> SeifertMatrix:
    """X + E with X symmetric and E the standard symplectic upper part,
    then a random unimodular change of basis."""
    n = 2 * genus
    x = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x[i][j] = x[j][i] = rng.randint(-span, span)
    for k in range(genus):
        x[2 * k][2 * k + 1] += 1
    V = Matrix(x, n)
    if mix:
        P = _unimodular(rng, n)
        V = P.T @ V @ P
    return SeifertMatrix(V)


@st.composite
def seifert_matrices(draw, max_genus: int = 2, span: int = 2):
    seed = draw(st.integers(0, 2**32 - 1))
    genus = draw(st.integers(1, max_genus))
    return random_seifert(random.Random(seed), genus, span)


@st.composite
def rationals_01(draw, max_den: int = 60):
    q = draw(st.integers(2, max_den))
    p = draw(st.integers(1, q - 1))
    from fractions import Fraction

    return Fraction(p, q)

"""Homology of q-fold branched cyclic covers from a Seifert matrix.

Conventions: in a presentation the rows are relations, so the group is
Z^N modulo the row space.  A deck matrix D acts on row vectors from the
right (v -> vD) and maps the row space into itself.

Three presentations are built:

* block:  V^T (x) I_q - V (x) S, generators grouped by surface basis
  element, S the cyclic shift.  For genus one the basis is first moved
  to one adapted to an isotropic curve, which gives the zero block.
* gamma:  I_q (x) Gamma + P (x) (I - Gamma), Gamma = (V - V^T)^-1 V,
  read column-wise (it presents the module by its columns).
* linking: the symmetric (q-1)-block tridiagonal matrix G with V + V^T on
  the diagonal, -V above and -V^T below.  Its inverse gives the linking
  form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import sympy

from .algebra import (
    Matrix,
    Poly,
    SmithForm,
    inverse_rational,
    resultant,
    smith_normal_form,
)
from .algebra.matrix import kron
from .seifert import SeifertMatrix, alexander_polynomial, m_parameter


class CoverError(ValueError):
    pass


def _shift(q: int) -> Matrix:
    """Cyclic shift e_a -> e_{a+1}."""
    return Matrix([[int(j == (i + 1) % q) for j in range(q)] for i in range(q)], q)


def genus_one_normal_form(V: SeifertMatrix, search: int = 60) -> tuple[Matrix, Matrix] | None:
    """Basis change P with P^T V P = [[0, M], [M + 1, B]], or None.

    x is a primitive vector with x^T V x = 0 and y completes it so that
    x^T (V - V^T) y = -1.
    """
    if V.size != 2:
        return None
    v = V.V
    k = v[0, 1] - v[1, 0]  # V - V^T = [[0, k], [-k, 0]], k = +-1
    quad = lambda a, b: v[0, 0] * a * a + (v[0, 1] + v[1, 0]) * a * b + v[1, 1] * b * b  # noqa: E731
    for size in range(1, search + 1):
        cands = []
        for a in range(-size, size + 1):
            for b in (size, -size) if abs(a) < size else range(0, size + 1):
                cands.append((a, b))
        for a, b in cands:
            if (a, b) == (0, 0) or gcd(a, b) != 1 or quad(a, b) != 0:
                continue
            # k (a y1 - b y0) = -1
            _, s, t = _ext_gcd(a, -b)
            y1, y0 = -k * s, -k * t
            P = Matrix([[a, y0], [b, y1]], 2)
            return P, P.T @ v @ P
    return None


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s a + t b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


@dataclass(frozen=True)
class CoverPresentation:
    q: int
    relations: Matrix
    deck: Matrix
    kind: str

    def smith(self) -> SmithForm:
        return _smith(self.relations)

    @property
    def all_factors(self) -> tuple[int, ...]:
        """Diagonal of the Smith form, padded with zeros to the generator count."""
        f = self.smith().factors
        return tuple(f) + (0,) * (self.relations.ncols - len(f))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nontrivial factors; 0 marks a free summand."""
        return tuple(d for d in self.all_factors if d != 1)

    @property
    def is_finite(self) -> bool:
        return 0 not in self.all_factors

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        out = 1
        for d in self.all_factors:
            out *= d
        return out


_smith_cache: dict = {}


def _smith(m: Matrix) -> SmithForm:
    key = m.rows
    sf = _smith_cache.get(key)
    if sf is None:
        sf = smith_normal_form(m)
        if len(_smith_cache) > 256:
            _smith_cache.clear()
        _smith_cache[key] = sf
    return sf


def _check_q(q: int) -> None:
    if q < 2:
        raise CoverError(f"q must be at least 2, got {q}")


def block_presentation(V: SeifertMatrix, q: int) -> CoverPresentation:
    _check_q(q)
    v = V.V
    if V.size == 2:
        nf = genus_one_normal_form(V)
        if nf is not None:
            v = nf[1]
    n = v.nrows
    rel = kron(v.T, Matrix.identity(q)) - kron(v, _shift(q)) if n else Matrix([], 0)
    deck = kron(Matrix.identity(n), _shift(q)) if n else Matrix([], 0)
    return CoverPresentation(q, rel, deck, "block")


def gamma_matrix(V: SeifertMatrix) -> Matrix:
    """(V - V^T)^-1 V; integral because det(V - V^T) = 1."""
    v = V.V
    inv = inverse_rational(v - v.T)
    g = inv @ v
    return Matrix([[int(x) for x in r] for r in g.rows], g.ncols)


def gamma_presentation(V: SeifertMatrix, q: int) -> CoverPresentation:
    _check_q(q)
    n = V.size
    if n == 0:
        return CoverPresentation(q, Matrix([], 0), Matrix([], 0), "gamma")
    G = gamma_matrix(V)
    I = Matrix.identity(n)
    P = _shift(q)
    cols = kron(Matrix.identity(q), G) + kron(P, I - G)
    # columns are relations; t acts on columns by P (x) I
    deck = kron(P, I).T
    return CoverPresentation(q, cols.T, deck, "gamma")


def linking_matrix(V: SeifertMatrix, q: int) -> Matrix:
    """Symmetric presentation G of size 2g(q - 1)."""
    _check_q(q)
    v = V.V
    n = v.nrows
    k = q - 1
    if n == 0:
        return Matrix([], 0)
    rows = [[0] * (n * k) for _ in range(n * k)]

    def put(bi: int, bj: int, blk: Matrix):
        for i in range(n):
            for j in range(n):
                rows[bi * n + i][bj * n + j] += blk[i, j]

    for b in range(k):
        put(b, b, v + v.T)
        if b + 1 < k:
            put(b, b + 1, -v)
            put(b + 1, b, -v.T)
    return Matrix(rows, n * k)


def linking_deck(V: SeifertMatrix, q: int) -> Matrix:
    """Deck generator on the G presentation (row vectors, right action).

    On the basis u_k = t^k (1 - t), t sends u_k to u_{k+1} and u_{q-2} to
    -(u_0 + ... + u_{q-2}).  That map T is an isometry, T G T^T = G, so
    G T^T G^-1 = T^-1 is integral and T^T preserves the row space.
    """
    n = V.size
    k = q - 1
    T = [[0] * (n * k) for _ in range(n * k)]
    for b in range(k):
        for i in range(n):
            if b + 1 < k:
                T[b * n + i][(b + 1) * n + i] = 1
            else:
                for c in range(k):
                    T[b * n + i][c * n + i] = -1
    return Matrix(T, n * k).T


def linking_presentation(V: SeifertMatrix, q: int) -> CoverPresentation:
    if V.size == 0:
        return CoverPresentation(q, Matrix([], 0), Matrix([], 0), "linking")
    return CoverPresentation(q, linking_matrix(V, q), linking_deck(V, q), "linking")


def homology_invariant_factors(V: SeifertMatrix, q: int, method: str = "gamma") -> tuple[int, ...]:
    """Nontrivial invariant factors of H_1 of the q-fold branched cover (0 = free)."""
    build = {"gamma": gamma_presentation, "block": block_presentation, "linking": linking_presentation}
    if method not in build:
        raise CoverError(f"unknown presentation {method!r}")
    return build[method](V, q).invariant_factors


def order_via_resultant(V: SeifertMatrix, q: int) -> int:
    """|prod_{i=1}^{q-1} Delta(zeta_q^i)| as a resultant."""
    d = alexander_polynomial(V).ordinary()
    phi = Poly([1] * q)  # (t^q - 1)/(t - 1)
    return abs(int(resultant(d, phi)))


def in_row_space(R: Matrix, v: list[int]) -> bool:
    """Whether v lies in the integer row space of R."""
    sf = _smith(R)
    w = _row_times(v, sf.right)
    for i, x in enumerate(w):
        d = sf.factors[i] if i < len(sf.factors) else 0
        if d == 0:
            if x != 0:
                return False
        elif x % d:
            return False
    return True


def _row_times(v: list, m: Matrix) -> list:
    return [sum(v[i] * m[i, j] for i in range(m.nrows)) for j in range(m.ncols)]


def deck_preserves_relations(pres: CoverPresentation) -> bool:
    return all(in_row_space(pres.relations, _row_times(list(r), pres.deck)) for r in pres.relations.rows)


def acts_trivially(pres: CoverPresentation, A: Matrix) -> bool:
    """Whether v -> vA - v kills the cokernel, i.e. A = I on H."""
    n = pres.relations.ncols
    for i in range(n):
        row = list(A.rows[i])
        row[i] -= 1
        if not in_row_space(pres.relations, row):
            return False
    return True


def deck_order(pres: CoverPresentation, limit: int | None = None) -> int:
    """Multiplicative order of the deck generator on the cokernel."""
    limit = limit or 4 * pres.q
    A = pres.deck
    for k in range(1, limit + 1):
        if acts_trivially(pres, A):
            return k
        A = A @ pres.deck
    raise CoverError("deck order exceeds search limit")


def annihilator_holds(V: SeifertMatrix, q: int) -> bool:
    """Gamma^q - (Gamma - I)^q kills H_1 (checked on the gamma presentation)."""
    pres = gamma_presentation(V, q)
    n = V.size
    if n == 0:
        return True
    G = gamma_matrix(V)
    I = Matrix.identity(n)

    def power(m: Matrix, e: int) -> Matrix:
        out = I
        for _ in range(e):
            out = out @ m
        return out

    A = power(G, q) - power(G - I, q)
    # acting on column vectors; in the transposed (row) world use kron(I, A)^T
    big = kron(Matrix.identity(q), A).T
    return all(in_row_space(pres.relations, list(r)) for r in big.rows)


# --- work mod p ---------------------------------------------------------------------


def _rref_mod_p(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    a = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    return len(_rref_mod_p(rows, p)[1]) if rows else 0


@dataclass(frozen=True)
class DeckAction:
    p: int
    matrix: tuple[tuple[int, ...], ...]
    eigenvalues: tuple[int, ...]


def _quotient_action(R: Matrix, D: Matrix, p: int) -> list[list[int]]:
    """Matrix of v -> vD on (Z/p)^N / rowspace(R)."""
    echelon, pivots = _rref_mod_p([list(r) for r in R.rows], p)
    n = R.ncols
    free = [c for c in range(n) if c not in pivots]

    def reduce(v: list[int]) -> list[int]:
        v = [x % p for x in v]
        for row, c in zip(echelon, pivots):
            if v[c]:
                f = v[c]
                v = [(x - f * y) % p for x, y in zip(v, row)]
        return [v[c] for c in free]

    out = []
    for c in free:
        e = [0] * n
        e[c] = 1
        out.append(reduce(_row_times(e, D)))
    return out


def _eigenvalues_mod_p(A: list[list[int]], p: int) -> list[int]:
    n = len(A)
    out = []
    for lam in range(p):
        shifted = [[(A[i][j] - (lam if i == j else 0)) % p for j in range(n)] for i in range(n)]
        if _rank_mod_p(shifted, p) < n:
            out.append(lam)
    return out


def deck_action_mod_p(V: SeifertMatrix, q: int, p: int, method: str = "gamma") -> DeckAction:
    """Action of the deck generator on H_1 (x) Z/p."""
    if not sympy.isprime(p) or p == 2:
        raise CoverError(f"p must be an odd prime, got {p}")
    if q % p == 0:
        raise CoverError(f"p = {p} divides q = {q}")
    pres = {"gamma": gamma_presentation, "block": block_presentation}[method](V, q)
    if not pres.is_finite:
        raise CoverError("homology is infinite")
    facs = pres.invariant_factors
    if not any(d % p == 0 for d in facs):
        raise CoverError(f"p = {p} does not divide the order {pres.order}")
    if any(d % (p * p) == 0 for d in facs):
        raise CoverError(f"p^2 divides an invariant factor; only elementary p-parts are supported")
    A = _quotient_action(pres.relations, pres.deck, p)
    return DeckAction(p, tuple(tuple(r) for r in A), tuple(_eigenvalues_mod_p(A, p)))


# --- linking form --------------------------------------------------------------------


@dataclass(frozen=True)
class LinkingForm:
    """Generators (row vectors on the symmetric presentation), their orders,
    and the pairing matrix with values in [0, 1)."""

    generators: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]
    values: tuple[tuple[Fraction, ...], ...]

    def pair(self, a: list[int], b: list[int]) -> Fraction:
        """Pairing of integer combinations of the generators."""
        s = Fraction(0)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                s += x * y * self.values[i][j]
        return s % 1


def _link(Ginv: Matrix, a: list[int], b: list[int]) -> Fraction:
    s = sum(a[i] * Ginv[i, j] * b[j] for i in range(len(a)) if a[i] for j in range(len(b)) if b[j])
    return Fraction(-s) % 1


def linking_form(V: SeifertMatrix, q: int) -> LinkingForm:
    """Linking form on the torsion of H_1, from the inverse of G."""
    if V.size == 0:
        return LinkingForm((), (), ())
    G = linking_matrix(V, q)
    sf = _smith(G)
    if 0 in sf.factors or len(sf.factors) < G.nrows:
        raise CoverError("homology is infinite; linking form needs a finite group")
    Ginv = inverse_rational(G)
    gens, orders = [], []
    for i, d in enumerate(sf.factors):
        if d > 1:
            gens.append(list(sf.right_inverse.rows[i]))
            orders.append(d)
    values = tuple(tuple(_link(Ginv, a, b) for b in gens) for a in gens)
    return LinkingForm(tuple(tuple(g) for g in gens), tuple(orders), values)


@dataclass(frozen=True)
class Metabolizers:
    p: int
    q: int
    m: int
    basis: tuple[tuple[int, ...], tuple[int, ...]]
    deck_matrix: tuple[tuple[int, int], tuple[int, int]]
    eigenvalues: tuple[int, ...]
    eigenlines: tuple[tuple[int, int], ...]
    isotropic_lines: tuple[tuple[int, int], ...]
    self_linking: tuple[Fraction, ...]

    @property
    def count(self) -> int:
        return len(self.isotropic_lines)


def _lines(p: int) -> list[tuple[int, int]]:
    return [(1, k) for k in range(p)] + [(0, 1)]


def _normalize_line(v: tuple[int, int], p: int) -> tuple[int, int]:
    a, b = v[0] % p, v[1] % p
    if a:
        inv = pow(a, -1, p)
        return 1, b * inv % p
    return 0, 1


def metabolizer_eigenspaces(V: SeifertMatrix, q: int, p: int) -> Metabolizers:
    """The p-primary part Z/p + Z/p, its deck eigenlines, and all isotropic lines."""
    if V.size != 2:
        raise CoverError("metabolizer search needs a genus-one Seifert matrix")
    m = m_parameter(V)
    if m is None or m < 1:
        raise CoverError("Seifert matrix is not of the algebraically slice genus-one form")
    if not sympy.isprime(p) or p == 2:
        raise CoverError(f"p must be an odd prime, got {p}")
    if q % p == 0:
        raise CoverError(f"p = {p} divides q = {q}")
    N = (m + 1) ** q - m**q
    if N % p or N % (p * p) == 0:
        raise CoverError(f"need gcd(p^2, (m+1)^q - m^q) = p; got (m+1)^q - m^q = {N}, p = {p}")
    G = linking_matrix(V, q)
    sf = _smith(G)
    idx = [i for i, d in enumerate(sf.factors) if d % p == 0]
    if len(idx) != 2:
        raise CoverError(f"{p}-primary part is not of rank two")
    Ginv = inverse_rational(G)
    # elements of order p: (d_i / p) e_i in Smith coordinates
    h = []
    for i in idx:
        c = sf.factors[i] // p
        h.append([c * x for x in sf.right_inverse.rows[i]])
    T = linking_deck(V, q)

    def coords(v: list[int]) -> tuple[int, int]:
        w = _row_times(v, sf.right)
        out = []
        for i in idx:
            d = sf.factors[i]
            out.append((w[i] % d) // (d // p))
        for j, x in enumerate(w):
            if j not in idx:
                d = sf.factors[j]
                if x % d:
                    raise CoverError("deck image left the p-torsion subgroup")
        return out[0], out[1]

    A = [list(coords(_row_times(hv, T))) for hv in h]  # row i = image of h_i
    eig = _eigenvalues_mod_p(A, p)
    eigenlines = []
    for lam in eig:
        # left eigenvector v with v A = lam v
        for line in _lines(p):
            a, b = line
            img = ((a * A[0][0] + b * A[1][0]) % p, (a * A[0][1] + b * A[1][1]) % p)
            if img == ((lam * a) % p, (lam * b) % p):
                eigenlines.append(line)
    iso, selfl = [], []
    for a, b in _lines(p):
        v = [a * x + b * y for x, y in zip(h[0], h[1])]
        lk = _link(Ginv, v, v)
        if lk == 0:
            iso.append((a, b))
    for line in eigenlines:
        a, b = line
        v = [a * x + b * y for x, y in zip(h[0], h[1])]
        selfl.append(_link(Ginv, v, v))
    return Metabolizers(
        p,
        q,
        m,
        (tuple(h[0]), tuple(h[1])),
        (tuple(A[0]), tuple(A[1])),
        tuple(eig),
        tuple(eigenlines),
        tuple(iso),
        tuple(selfl),
    )


def expected_eigenvalues(m: int, p: int) -> tuple[int, ...]:
    a = (m + 1) * pow(m, -1, p) % p
    return tuple(sorted({a, pow(a, -1, p)}))

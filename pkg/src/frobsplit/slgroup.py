"""The coordinate ring of SL_n and its distinguished functions.

Conventions, fixed once and checked by the splitting verifier:

* ``chi_i`` is the character of the i-th exterior power, i.e. the sum of all
  principal i x i minors.
* ``m_i`` (:func:`corner_minor`) is the leading principal i x i minor, the
  matrix coefficient pairing the lowest weight vector of the i-th exterior
  power with its dual. It is nonzero at the identity, and the product of all
  m_i vanishes exactly off the big cell of LU-decomposable matrices.
* :func:`antidiagonal_minor` (rows ``1..i``, columns ``n-i+1..n``) is kept as a
  negative control: with it the Cartier image of the splitting section is 0.

Regularity: a matrix is regular iff its gl_n-centralizer has dimension n.
For SL_n this is the rank-(n-1) centralizer plus the scalar direction.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from math import comb
from typing import Sequence

from .ffield import Prime, inv_mod
from .poly import Poly, PolyRing

# linear algebra over F_p on lists of lists of ints


def mat_mul(a, b, p):
    n, m, k = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(m)) % p for j in range(k)] for i in range(n)]


def _echelon(rows, p):
    """Row-reduce a copy in place; return (reduced rows, rank, sign of permutation)."""
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    rank = 0
    sign = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][col] % p), None)
        if piv is None:
            continue
        if piv != rank:
            a[rank], a[piv] = a[piv], a[rank]
            sign = -sign
        inv = inv_mod(a[rank][col], p)
        for r in range(rank + 1, nrows):
            f = a[r][col] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == nrows:
            break
    return a, rank, sign


def mat_rank(a, p) -> int:
    if not a:
        return 0
    return _echelon(a, p)[1]


def mat_det(a, p) -> int:
    n = len(a)
    if n == 0:
        return 1
    red, rank, sign = _echelon(a, p)
    if rank < n:
        return 0
    d = sign
    for i in range(n):
        d = d * red[i][i] % p
    return d % p


def mat_inv(a, p):
    n = len(a)
    aug = [list(a[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] % p), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = inv_mod(aug[col][col], p)
        aug[col] = [x * inv % p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def minor_value(a, rows, cols, p) -> int:
    return mat_det([[a[r][c] for c in cols] for r in rows], p)


@dataclass(frozen=True)
class MatrixPoint:
    """An element of SL_n(F_p)."""

    entries: tuple
    p: int

    def __post_init__(self):
        rows = tuple(tuple(int(x) % self.p for x in r) for r in self.entries)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")
        object.__setattr__(self, "entries", rows)
        if mat_det(rows, self.p) != 1:
            raise ValueError("matrix does not have determinant 1")

    @property
    def n(self) -> int:
        return len(self.entries)

    def flat(self) -> list:
        return [x for r in self.entries for x in r]

    def rows(self) -> list:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: "MatrixPoint") -> "MatrixPoint":
        return MatrixPoint(mat_mul(self.entries, other.entries, self.p), self.p)

    def inverse(self) -> "MatrixPoint":
        return MatrixPoint(mat_inv(self.entries, self.p), self.p)

    @classmethod
    def identity(cls, n: int, p: int) -> "MatrixPoint":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), p)

    @classmethod
    def random(cls, n: int, p: int, rng: random.Random) -> "MatrixPoint":
        while True:
            a = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
            d = mat_det(a, p)
            if d:
                dinv = inv_mod(d, p)
                a[0] = [x * dinv % p for x in a[0]]
                return cls(a, p)

    @classmethod
    def random_upper(cls, n: int, p: int, rng: random.Random) -> "MatrixPoint":
        """Random upper triangular element of SL_n(F_p)."""
        a = [[0] * n for _ in range(n)]
        prod = 1
        for i in range(n):
            for j in range(i + 1, n):
                a[i][j] = rng.randrange(p)
            if i < n - 1:
                a[i][i] = rng.randrange(1, p)
                prod = prod * a[i][i] % p
        a[n - 1][n - 1] = inv_mod(prod, p)
        return cls(a, p)


def _var_name(i, j, n):
    return f"x{i}{j}" if n <= 9 else f"x{i}_{j}"


class SlnRing:
    """Coordinate ring context for SL_n over F_p on the ambient n^2 variables."""

    def __init__(self, n: int, p: int):
        if n < 2:
            raise ValueError("n must be at least 2")
        self.n = n
        self.p = Prime(int(p)).p
        names = [_var_name(i + 1, j + 1, n) for i in range(n) for j in range(n)]
        self.ring = PolyRing(names, self.p)

    def __repr__(self):
        return f"SlnRing(n={self.n}, p={self.p})"

    def x(self, i: int, j: int) -> Poly:
        """Coordinate function at row i, column j (1-based)."""
        return self.ring.var(_var_name(i, j, self.n))

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Poly:
        """Minor with 0-based ``rows`` and ``cols`` as a polynomial (Leibniz expansion)."""
        rows, cols = list(rows), list(cols)
        if len(rows) != len(cols):
            raise ValueError("minor needs as many rows as columns")
        r, n, p = self.ring, self.n, self.p
        terms = {}
        for perm in permutations(range(len(cols))):
            inversions = sum(1 for a, b in combinations(perm, 2) if a > b)
            e = 0
            for k, pk in enumerate(perm):
                e += 1 << ((rows[k] * n + cols[pk]) * r.bits)
            c = (-1) ** inversions % p
            terms[e] = (terms.get(e, 0) + c) % p
        return Poly(r, {e: c for e, c in terms.items() if c})

    @cached_property
    def det_poly(self) -> Poly:
        return self.minor(range(self.n), range(self.n))

    @cached_property
    def chart_relation(self) -> Poly:
        """``det - 1``, the equation of SL_n in the ambient affine space."""
        return self.det_poly - 1

    @cached_property
    def chars(self) -> list:
        return [fundamental_character(self, i) for i in range(1, self.n)]

    @cached_property
    def corner_minors(self) -> list:
        return [corner_minor(self, i) for i in range(1, self.n)]

    def evaluate(self, f: Poly, g: MatrixPoint | Sequence) -> int:
        vals = g.flat() if isinstance(g, MatrixPoint) else [x for row in g for x in row]
        return f.evaluate(vals)

    def point(self, rows) -> MatrixPoint:
        return MatrixPoint(rows, self.p)

    def identity(self) -> MatrixPoint:
        return MatrixPoint.identity(self.n, self.p)


def _check_index(R: SlnRing, i: int):
    if not 1 <= i <= R.n - 1:
        raise ValueError(f"index {i} out of range 1..{R.n - 1}")


def fundamental_character(R: SlnRing, i: int) -> Poly:
    """Trace of the i-th exterior power: sum of principal i x i minors."""
    _check_index(R, i)
    total = R.ring.zero()
    for S in combinations(range(R.n), i):
        total = total + R.minor(S, S)
    return total


def corner_minor(R: SlnRing, i: int) -> Poly:
    """Leading principal i x i minor (rows and columns ``1..i``)."""
    _check_index(R, i)
    return R.minor(range(i), range(i))


def antidiagonal_minor(R: SlnRing, i: int) -> Poly:
    """Rows ``1..i`` against columns ``n-i+1..n``; vanishes at the identity."""
    _check_index(R, i)
    return R.minor(range(i), range(R.n - i, R.n))


def exterior_power_matrix(g: MatrixPoint, i: int) -> list:
    """Matrix of the i-th exterior power, indexed by sorted i-subsets."""
    if not 1 <= i <= g.n:
        raise ValueError(f"exterior power index {i} out of range 1..{g.n}")
    subsets = list(combinations(range(g.n), i))
    a = g.entries
    return [[minor_value(a, S, T, g.p) for T in subsets] for S in subsets]


def trace(a, p) -> int:
    return sum(a[i][i] for i in range(len(a))) % p


def companion_point(R: SlnRing, a: Sequence[int]) -> MatrixPoint:
    """Companion matrix whose characters are ``a``.

    Characteristic polynomial ``t^n - a_1 t^(n-1) + a_2 t^(n-2) - ... + (-1)^n``:
    ones on the subdiagonal, last column ``-c_0, ..., -c_(n-1)`` where
    ``c_(n-k) = (-1)^k a_k`` and ``a_n = 1``.
    """
    n, p = R.n, R.p
    a = [int(v) % p for v in a]
    if len(a) != n - 1:
        raise ValueError(f"expected {n - 1} fiber coordinates, got {len(a)}")
    full = a + [1]
    c = [0] * n
    for k in range(1, n + 1):
        c[n - k] = (-1) ** k * full[k - 1] % p
    m = [[0] * n for _ in range(n)]
    for i in range(1, n):
        m[i][i - 1] = 1
    for i in range(n):
        m[i][n - 1] = -c[i] % p
    return MatrixPoint(m, p)


def centralizer_dimension(g: MatrixPoint) -> int:
    """Dimension of ``{X in gl_n : Xg = gX}`` (rank of ``X -> Xg - gX``)."""
    n, p, a = g.n, g.p, g.entries
    cols = []
    for r in range(n):
        for s in range(n):
            # image of the matrix unit E_rs
            img = [[0] * n for _ in range(n)]
            for j in range(n):
                img[r][j] += a[s][j]
            for i in range(n):
                img[i][s] -= a[i][r]
            cols.append([v % p for row in img for v in row])
    return n * n - mat_rank(cols, p)


def is_regular(g: MatrixPoint) -> bool:
    return centralizer_dimension(g) == g.n


def character_values(R: SlnRing, g: MatrixPoint) -> list:
    return [R.evaluate(chi, g) for chi in R.chars]


def unipotent_coordinates(n: int, p: int) -> list:
    return [comb(n, i) % p for i in range(1, n)]


def b_conjugation_witness(R: SlnRing, f: Poly, g: MatrixPoint, rng: random.Random, tries: int = 200):
    """Search for upper triangular ``b`` with ``f(b g b^-1) != 0``; None if not found."""
    for _ in range(tries):
        b = MatrixPoint.random_upper(R.n, R.p, rng)
        if R.evaluate(f, b @ g @ b.inverse()):
            return b
    return None

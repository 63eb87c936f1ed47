"""Exact rational scalars, vectors and Gram-form geometry.

Everything here works over :class:`fractions.Fraction`.  A vector is a plain
tuple of fractions; matrices are tuples of row tuples.  Linear systems are
solved by fraction-free (Bareiss) elimination on an integer-scaled copy of
the augmented matrix, so intermediate entries stay integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Tuple, Union

Rat = Fraction
Vec = Tuple[Fraction, ...]
Matrix = Tuple[Tuple[Fraction, ...], ...]

RatLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    """Raised when vector or matrix shapes do not fit together."""


class NotIndependentError(ValueError):
    """Raised when a set of vectors expected to be independent is not."""


def parse_rat(x: RatLike) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rat(x: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(xs: Iterable[RatLike]) -> Vec:
    return tuple(parse_rat(x) for x in xs)


def zero_vec(dim: int) -> Vec:
    return (ZERO,) * dim


def unit_vec(dim: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(dim))


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(c: RatLike, u: Vec) -> Vec:
    c = parse_rat(c)
    return tuple(c * a for a in u)


def is_zero(u: Vec) -> bool:
    return not any(u)


def lin_comb(coeffs: Sequence[RatLike], vectors: Sequence[Vec], dim: int) -> Vec:
    """Return sum(c_i * v_i) as a vector of length ``dim``."""
    out = [ZERO] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def format_vec(u: Vec) -> str:
    return "(" + ", ".join(format_rat(a) for a in u) + ")"


def as_matrix(rows: Iterable[Iterable[RatLike]]) -> Matrix:
    return tuple(vec(r) for r in rows)


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_vec(m: Sequence[Sequence[Fraction]], v: Vec) -> Vec:
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in m)


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a)


def identity(n: int) -> Matrix:
    return tuple(unit_vec(n, i) for i in range(n))


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        d = lcm(1, *(Fraction(x).denominator for x in r))
        out.append([int(Fraction(x) * d) for x in r])
    return out


def _bareiss(a: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """In-place fraction-free row reduction of the first ``ncols`` columns.

    Returns the reduced matrix and the pivot columns.  Entries below each
    pivot are zero afterwards; the division by the previous pivot is exact.
    """
    nrows = len(a)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            aic = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, len(row_i)):
                row_i[j] = (piv * row_i[j] - aic * row_r[j]) // prev
            row_i[c] = 0
        # rows above r keep their entries; only the echelon part is used
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(vectors: Sequence[Vec]) -> int:
    """Rank of a list of vectors (rows)."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return 0
    a = _integer_rows(vectors)
    _, pivots = _bareiss(a, len(a[0]))
    return len(pivots)


def determinant(m: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionError("determinant needs a square matrix")
    if n == 0:
        return ONE
    scale = ONE
    rows = []
    for r in m:
        d = lcm(1, *(Fraction(x).denominator for x in r))
        scale /= d
        rows.append([int(Fraction(x) * d) for x in r])
    sign = 1
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        piv = rows[c][c]
        for i in range(c + 1, n):
            aic = rows[i][c]
            for j in range(c + 1, n):
                rows[i][j] = (piv * rows[i][j] - aic * rows[c][j]) // prev
            rows[i][c] = 0
        prev = piv
    return sign * rows[n - 1][n - 1] * scale


def is_symmetric(m: Sequence[Sequence[Fraction]]) -> bool:
    n = len(m)
    return all(len(r) == n for r in m) and all(m[i][j] == m[j][i] for i in range(n) for j in range(i))


def is_positive_definite(m: Sequence[Sequence[RatLike]]) -> bool:
    """True iff every leading principal minor is positive.

    Raises ValueError for a non-symmetric matrix.
    """
    mm = as_matrix(m)
    if not is_symmetric(mm):
        raise ValueError("matrix is not symmetric")
    n = len(mm)
    return all(determinant([row[:k] for row in mm[:k]]) > 0 for k in range(1, n + 1))


def solve(m: Sequence[Sequence[RatLike]], rhs: Sequence[RatLike]) -> Vec | None:
    """Solve ``m x = rhs`` exactly.

    ``m`` may be rectangular (rows >= cols for a chance of uniqueness).
    Returns None when the system is inconsistent or its solution is not
    unique.
    """
    mm = as_matrix(m)
    b = vec(rhs)
    if len(mm) != len(b):
        raise DimensionError("row count of m and length of rhs differ")
    if not mm:
        return ()
    ncols = len(mm[0])
    if any(len(r) != ncols for r in mm):
        raise DimensionError("ragged matrix")
    if ncols == 0:
        return () if not any(b) else None
    aug = _integer_rows([tuple(r) + (bi,) for r, bi in zip(mm, b)])
    a, pivots = _bareiss(aug, ncols)
    if len(pivots) < ncols:
        return None
    if any(a[i][ncols] != 0 for i in range(ncols, len(a))):
        return None
    x = [ZERO] * ncols
    for i in range(ncols - 1, -1, -1):
        s = Fraction(a[i][ncols])
        for j in range(i + 1, ncols):
            if a[i][j]:
                s -= a[i][j] * x[j]
        x[i] = s / a[i][i]
    return tuple(x)


def inverse(m: Sequence[Sequence[RatLike]]) -> Matrix | None:
    """Inverse of a square matrix, or None if singular."""
    mm = as_matrix(m)
    n = len(mm)
    if any(len(r) != n for r in mm):
        raise DimensionError("inverse needs a square matrix")
    cols = []
    for i in range(n):
        x = solve(mm, unit_vec(n, i))
        if x is None:
            return None
        cols.append(x)
    return transpose(cols)


@dataclass(frozen=True)
class AmbientSpace:
    """A coordinate space with an exact positive-definite Gram form.

    Dimension 0 is allowed: it is the target of the quotient by a full base.
    """

    dim: int
    gram: Matrix

    def __post_init__(self) -> None:
        g = as_matrix(self.gram)
        object.__setattr__(self, "gram", g)
        if self.dim < 0 or len(g) != self.dim or any(len(r) != self.dim for r in g):
            raise DimensionError(f"gram must be {self.dim}x{self.dim}")
        if not is_positive_definite(g):
            raise ValueError("gram is not positive definite")

    @classmethod
    def euclidean(cls, dim: int) -> "AmbientSpace":
        return cls(dim, identity(dim))

    def apply(self, v: Vec) -> Vec:
        """Return gram * v."""
        return mat_vec(self.gram, v)

    def inner(self, u: Vec, v: Vec) -> Fraction:
        return inner(self, u, v)

    def norm2(self, u: Vec) -> Fraction:
        return inner(self, u, u)

    def gram_of(self, vectors: Sequence[Vec]) -> Matrix:
        return tuple(tuple(inner(self, a, b) for b in vectors) for a in vectors)


def inner(space: AmbientSpace, u: Vec, v: Vec) -> Fraction:
    if len(u) != space.dim or len(v) != space.dim:
        raise DimensionError("vector length does not match the space")
    total = ZERO
    g = space.gram
    for i, a in enumerate(u):
        if a:
            row = g[i]
            for j, b in enumerate(v):
                if b and row[j]:
                    total += a * row[j] * b
    return total


def project_perp(space: AmbientSpace, i_set: Sequence[Vec], v: Vec) -> Vec:
    """Orthogonal projection of ``v`` onto the complement of span(i_set)."""
    if len(v) != space.dim or any(len(a) != space.dim for a in i_set):
        raise DimensionError("vector length does not match the space")
    if not i_set:
        return tuple(v)
    g = space.gram_of(i_set)
    rhs = tuple(inner(space, a, v) for a in i_set)
    c = solve(g, rhs)
    if c is None:
        raise NotIndependentError("i_set is not linearly independent")
    return vsub(tuple(v), lin_comb(c, i_set, space.dim))


@dataclass(frozen=True)
class LinearMap:
    """A linear map given by its matrix (rows index target coordinates).

    ``scales`` holds the conformal factors when the map is known to be
    conformal (one per irreducible component of the source), else None.
    """

    matrix: Matrix
    scales: tuple[Fraction, ...] | None = None

    def __call__(self, v: Vec) -> Vec:
        return mat_vec(self.matrix, v)

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        return LinearMap(mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "LinearMap | None":
        inv = inverse(self.matrix)
        return None if inv is None else LinearMap(inv)

    def rows(self) -> list[list[str]]:
        return [[format_rat(x) for x in row] for row in self.matrix]

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(r) for r in self.rows()) + "]"


def map_from_images(sources: Sequence[Vec], images: Sequence[Vec]) -> LinearMap:
    """The linear map sending each source vector (a basis) to its image."""
    src = transpose(sources)
    inv = inverse(src)
    if inv is None:
        raise NotIndependentError("source vectors are not a basis")
    return LinearMap(mat_mul(transpose(images), inv))

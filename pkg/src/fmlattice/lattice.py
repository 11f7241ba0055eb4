"""Exact linear algebra over the integers and rationals.

Everything in this package runs on arbitrary-precision exact arithmetic:
matrix entries are Python ints or ``fractions.Fraction``, never floats.
Matrices are immutable values and every operation returns a fresh one, so
all of this is safe to use from concurrent code without locking.

The intended scale is tiny by linear-algebra standards (lattice ranks up
to ~24), which is why the classical algorithms are the right tool:
Gaussian elimination over Q, fraction-free (Bareiss) elimination for
integer determinants and ranks, and pivot-and-reduce Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class DimensionError(ValueError):
    """Shapes of the operands do not match."""


def _exact(x):
    """Coerce an entry to int or Fraction; floats are rejected outright."""
    if isinstance(x, bool):
        raise TypeError("bool is not a matrix entry")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    raise TypeError(f"exact entry expected, got {type(x).__name__}")


def as_rational(x) -> Fraction | int:
    """Parse an exact scalar from an int, Fraction or 'p/q' string."""
    if isinstance(x, str):
        return _exact(Fraction(x))
    return _exact(x)


def vector(entries) -> tuple:
    return tuple(_exact(x) for x in entries)


def dot(u, v):
    if len(u) != len(v):
        raise DimensionError("vectors of unequal length")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u, v):
    if len(u) != len(v):
        raise DimensionError("vectors of unequal length")
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(k, u):
    return tuple(_exact(k * x) for x in u)


def is_integral_vector(u) -> bool:
    return all(isinstance(x, int) for x in (_exact(e) for e in u))


class Matrix:
    """An immutable matrix with exact (int / Fraction) entries."""

    __slots__ = ("nrows", "ncols", "_e")

    def __init__(self, rows):
        data = tuple(tuple(_exact(x) for x in row) for row in rows)
        if not data:
            raise DimensionError("empty matrix")
        width = len(data[0])
        if width == 0 or any(len(r) != width for r in data):
            raise DimensionError("rows must be nonempty and of equal length")
        self.nrows = len(data)
        self.ncols = width
        self._e = data

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def diagonal(cls, values) -> "Matrix":
        vals = list(values)
        n = len(vals)
        return cls([[vals[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols) -> "Matrix":
        cols = [tuple(c) for c in cols]
        if not cols:
            raise DimensionError("no columns")
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    @property
    def entries(self) -> tuple:
        return self._e

    def row(self, i: int) -> tuple:
        return self._e[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._e)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    @property
    def T(self) -> "Matrix":
        return Matrix([[self._e[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    @property
    def is_integral(self) -> bool:
        return all(isinstance(x, int) for row in self._e for x in row)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        cols = list(zip(*other._e))
        out = []
        for row in self._e:
            out_row = []
            for col in cols:
                acc = 0
                for a, b in zip(row, col):
                    if a and b:
                        acc += a * b
                out_row.append(acc)
            out.append(out_row)
        return Matrix(out)

    def apply(self, v) -> tuple:
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} against {self.nrows}x{self.ncols}")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self._e)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("shape mismatch in addition")
        return Matrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._e, other._e)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("shape mismatch in subtraction")
        return Matrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._e, other._e)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-x for x in row] for row in self._e])

    def scale(self, k) -> "Matrix":
        k = _exact(k if not isinstance(k, str) else Fraction(k))
        return Matrix([[k * x for x in row] for row in self._e])

    def __rmul__(self, k) -> "Matrix":
        return self.scale(k)

    def power(self, n: int) -> "Matrix":
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        if n < 0:
            return inverse(self).power(-n)
        result = Matrix.identity(self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._e == other._e

    def __hash__(self) -> int:
        return hash(self._e)

    def __repr__(self) -> str:
        body = ";".join(",".join(str(x) for x in row) for row in self._e)
        return f"Matrix[{body}]"


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if a.nrows != b.nrows:
        raise DimensionError("row count mismatch in hstack")
    return Matrix([ra + rb for ra, rb in zip(a.entries, b.entries)])


def vstack(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.ncols:
        raise DimensionError("column count mismatch in vstack")
    return Matrix(a.entries + b.entries)


def block_diagonal(blocks) -> Matrix:
    blocks = list(blocks)
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    rows = [[0] * m for _ in range(n)]
    i0 = j0 = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                rows[i0 + i][j0 + j] = b[i, j]
        i0 += b.nrows
        j0 += b.ncols
    return Matrix(rows)


def det(m: Matrix):
    """Exact determinant (Bareiss on integer input, Gauss over Q otherwise)."""
    if not m.is_square:
        raise DimensionError("determinant of a non-square matrix")
    if m.is_integral:
        return _det_bareiss([list(row) for row in m.entries])
    a = [[Fraction(x) for x in row] for row in m.entries]
    n = m.nrows
    sign = 1
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        result *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return _exact(sign * result)


def _det_bareiss(a) -> int:
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(m: Matrix) -> Matrix:
    """Exact inverse over Q; raises on singular input."""
    if not m.is_square:
        raise DimensionError("inverse of a non-square matrix")
    n = m.nrows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m.entries)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return Matrix([row[n:] for row in a])


def rref(m: Matrix) -> tuple:
    """Reduced row-echelon form over Q; returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in m.entries]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv if x else x for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Matrix(a), tuple(pivots)


def rank(m: Matrix) -> int:
    if m.is_integral:
        return _rank_fraction_free([list(row) for row in m.entries])
    return len(rref(m)[1])


def _rank_fraction_free(a) -> int:
    # Bareiss-style forward elimination; entries stay integral.
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == nrows:
            break
    return r


def kernel_basis(m: Matrix) -> list:
    """A basis of the rational null space, empty when the matrix is injective."""
    reduced, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i, f]
        basis.append(tuple(_exact(x) for x in v))
    return basis


def solve_rational(m: Matrix, b) -> tuple | None:
    """One exact solution of m x = b over Q, or None when inconsistent."""
    if len(b) != m.nrows:
        raise DimensionError("right-hand side length mismatch")
    aug = Matrix([list(row) + [bi] for row, bi in zip(m.entries, b)])
    reduced, pivots = rref(aug)
    if m.ncols in pivots:
        return None
    x = [Fraction(0)] * m.ncols
    for i, p in enumerate(pivots):
        x[p] = reduced[i, m.ncols]
    return tuple(_exact(v) for v in x)


def solve_affine(m: Matrix, b) -> tuple | None:
    """Full rational solution set of m x = b: (particular, kernel basis)."""
    x0 = solve_rational(m, b)
    if x0 is None:
        return None
    return x0, kernel_basis(m)


def in_column_space(m: Matrix, v) -> bool:
    return solve_rational(m, v) is not None


def is_unimodular(m: Matrix) -> bool:
    return m.is_square and m.is_integral and det(m) in (1, -1)


def smith_normal_form(m: Matrix) -> tuple:
    """Decompose an integer matrix as U @ m @ V = D.

    U and V are unimodular; D is diagonal with nonnegative entries and
    each diagonal entry divides the next.  Total on all integer matrices.
    """
    if not m.is_integral:
        raise ValueError("Smith normal form needs an integer matrix")
    nrows, ncols = m.nrows, m.ncols
    a = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def row_sub(i, j, q):
        if q:
            a[i] = [x - q * y for x, y in zip(a[i], a[j])]
            u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(j, k, q):
        if q:
            for row in a:
                row[j] -= q * row[k]
            for row in v:
                row[j] -= q * row[k]

    def row_swap(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def row_add(i, j):
        a[i] = [x + y for x, y in zip(a[i], a[j])]
        u[i] = [x + y for x, y in zip(u[i], u[j])]

    for t in range(min(nrows, ncols)):
        # smallest nonzero pivot in the remaining block
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        if a[t][t] < 0:
            row_negate(t)
        while True:
            # Euclidean clearing of column t, then row t; a nonzero
            # remainder becomes the new, strictly smaller pivot.
            for i in range(t + 1, nrows):
                if a[i][t]:
                    row_sub(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        row_swap(i, t)
            if any(a[i][t] for i in range(t + 1, nrows)):
                continue
            for j in range(t + 1, ncols):
                if a[t][j]:
                    col_sub(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        col_swap(j, t)
            if any(a[t][j] for j in range(t + 1, ncols)) or \
                    any(a[i][t] for i in range(t + 1, nrows)):
                continue
            # the pivot must divide the whole remaining block, else fold
            # the offending row in and reduce again
            p = a[t][t]
            bad = next((i for i in range(t + 1, nrows)
                        if any(x % p for x in a[i][t + 1:])), None)
            if bad is None:
                break
            row_add(t, bad)

    return Matrix(u), Matrix(a), Matrix(v)


def solve_integer(m: Matrix, b) -> tuple | None:
    """An integer solution of m x = b, or None when none exists."""
    if len(b) != m.nrows:
        raise DimensionError("right-hand side length mismatch")
    if not m.is_integral or not all(isinstance(_exact(x), int) for x in b):
        raise ValueError("solve_integer needs integer data")
    u, d, v = smith_normal_form(m)
    c = u.apply(tuple(b))
    y = [0] * m.ncols
    k = min(m.nrows, m.ncols)
    for i in range(m.nrows):
        di = d[i, i] if i < k else 0
        if di:
            q, r = divmod(c[i], di)
            if r:
                return None
            y[i] = q
        elif c[i]:
            return None
    return v.apply(tuple(y))


@dataclass(frozen=True)
class BilinearForm:
    """A nondegenerate symmetric integer pairing on Z^dim."""

    dim: int
    gram: Matrix

    def __post_init__(self):
        g = self.gram
        if not (g.is_square and g.nrows == self.dim and self.dim >= 1):
            raise DimensionError("Gram matrix does not match the stated dimension")
        if not g.is_integral:
            raise ValueError("Gram matrix must be integral")
        if g != g.T:
            raise ValueError("Gram matrix must be symmetric")
        if det(g) == 0:
            raise ValueError("Gram matrix must be nondegenerate")

    @classmethod
    def from_rows(cls, rows) -> "BilinearForm":
        g = Matrix(rows)
        return cls(g.nrows, g)

    def pair(self, u, v):
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionError("vector length does not match the lattice rank")
        return dot(u, self.gram.apply(v))


def gcd_all(values) -> int:
    """gcd of arbitrarily many integers; 0 for an empty or all-zero family."""
    g = 0
    for x in values:
        g = gcd(g, abs(x))
    return g

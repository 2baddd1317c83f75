"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`; nothing is ever
rounded.  Vectors are plain tuples of Fractions, matrices are immutable
:class:`Matrix` objects and subspaces carry a canonical reduced echelon
basis so that equality is a row-wise comparison.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


def q(x) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Accepts ints, Fractions, ``"a/b"`` strings and ``[num, den]`` pairs.
    Floats are refused: they cannot be trusted to be exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (list, tuple)) and len(x) == 2:
        num, den = x
        if not isinstance(num, int) or not isinstance(den, int) or den == 0:
            raise ValueError(f"bad rational pair {x!r}")
        return Fraction(num, den)
    raise TypeError(f"not an exact rational: {x!r}")


def vec(entries: Iterable) -> Vector:
    return tuple(q(e) for e in entries)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def vadd(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths {len(u)} != {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths {len(u)} != {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    c = q(c)
    return tuple(c * a for a in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


class Matrix:
    """Immutable dense matrix of Fractions.

    ``M[i, j]`` is row ``i``, column ``j``.  Matrices act on column
    vectors: ``M @ v``.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(q(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise DimensionError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise DimensionError("ragged matrix rows")
        self._data = rows
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def _raw(cls, rows: tuple, cols: int) -> "Matrix":
        m = cls.__new__(cls)
        m._data = rows
        m.rows = len(rows)
        m.cols = cols
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if not columns:
            if rows is None:
                raise DimensionError("row count needed for a matrix with no columns")
            return cls._raw(tuple(() for _ in range(rows)), 0)
        n = len(columns[0])
        return cls._raw(tuple(tuple(q(c[i]) for c in columns) for i in range(n)), len(columns))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls._raw(
            tuple(tuple(q(entries[i]) if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def block_diagonal(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        n_rows = sum(b.rows for b in blocks)
        n_cols = sum(b.cols for b in blocks)
        out = [[ZERO] * n_cols for _ in range(n_rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b._data[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls._raw(tuple(tuple(r) for r in out), n_cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def to_rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._data), self.cols)

    def scale(self, c) -> "Matrix":
        c = q(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._data), self.cols)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(
            tuple(tuple(self._data[i][j] for i in range(self.rows)) for j in range(self.cols)),
            self.rows,
        )

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"matrix with {self.cols} columns applied to length-{len(v)} vector")
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(sum((r[j] * x for j, x in nz), ZERO) for r in self._data)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = other.columns() if other.cols else []
            # sparse row times dense column; most structure matrices are sparse
            out = []
            for r in self._data:
                nz = [(k, a) for k, a in enumerate(r) if a]
                out.append(tuple(sum((a * c[k] for k, a in nz), ZERO) for c in ocols))
            return Matrix._raw(tuple(out), other.cols)
        return self.apply(other)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def trace(self) -> Fraction:
        if not self.is_square():
            raise DimensionError("trace of a non-square matrix")
        return sum((self._data[i][i] for i in range(self.rows)), ZERO)

    def rank(self) -> int:
        return len(rref(self._data, self.cols)[1])

    def det(self) -> Fraction:
        if not self.is_square():
            raise DimensionError("determinant of a non-square matrix")
        a = [list(r) for r in self._data]
        n = self.rows
        det = ONE
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                return ZERO
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            piv = a[c][c]
            det *= piv
            for r in range(c + 1, n):
                f = a[r][c]
                if f:
                    f = f / piv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def inverse(self) -> "Matrix":
        """Exact inverse; raises ``ZeroDivisionError`` on a singular matrix."""
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(self._data)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(tuple(tuple(r[n:]) for r in red[:n]), n)

    def power(self, k: int) -> "Matrix":
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def restrict(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self._data[i][j] for j in cols) for i in rows), len(cols))

    def flatten(self) -> Vector:
        """Row-major entries, the coordinates used for spaces of matrices."""
        return tuple(x for r in self._data for x in r)

    @classmethod
    def unflatten(cls, v: Sequence, rows: int, cols: int) -> "Matrix":
        return cls._raw(tuple(tuple(v[i * cols:(i + 1) * cols]) for i in range(rows)), cols)


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    a = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        pr = a[r]
        nz = [k for k in range(c, ncols) if pr[k]]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    row = a[i]
                    for k in nz:
                        row[k] -= f * pr[k]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def kronecker(m: Matrix, n: Matrix) -> Matrix:
    """Kronecker product; row (i, k) sits at index ``i * n.rows + k``."""
    out = []
    for i in range(m.rows):
        for k in range(n.rows):
            out.append(tuple(m[i, j] * n[k, l] for j in range(m.cols) for l in range(n.cols)))
    return Matrix._raw(tuple(out), m.cols * n.cols)


def stack(mats: Sequence[Matrix], cols: int) -> Matrix:
    """Vertical concatenation."""
    rows = []
    for m in mats:
        if m.cols != cols:
            raise DimensionError("stacked blocks need equal column counts")
        rows.extend(m.row(i) for i in range(m.rows))
    return Matrix._raw(tuple(rows), cols)


class Subspace:
    """Subspace of ``Q^ambient`` stored by its canonical RREF basis."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, basis: tuple, pivots: tuple):
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int) -> "Subspace":
        vs = [tuple(q(x) for x in v) for v in vectors]
        for v in vs:
            if len(v) != ambient:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient}")
        red, piv = rref(vs, ambient)
        return cls(ambient, tuple(tuple(r) for r in red), tuple(piv))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, (), ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, tuple(unit_vector(ambient, i) for i in range(ambient)), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def _check(self, other: "Subspace") -> None:
        if self.ambient != other.ambient:
            raise DimensionError(f"ambient dimensions differ: {self.ambient} vs {other.ambient}")

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` after eliminating the pivot coordinates."""
        r = list(v)
        for b, p in zip(self.basis, self.pivots):
            f = r[p]
            if f:
                r = [x - f * y for x, y in zip(r, b)]
        return tuple(r)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient:
            raise DimensionError("membership test with wrong vector length")
        return is_zero_vector(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the canonical basis; ``v`` must lie in the span."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(q(v[p]) for p in self.pivots)

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient)

    def annihilator(self) -> "Subspace":
        """Functionals (in the dual coordinates) vanishing on the subspace."""
        if not self.basis:
            return Subspace.full(self.ambient)
        return kernel(Matrix._raw(self.basis, self.ambient))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    __and__ = intersect

    def complement_indices(self) -> list[int]:
        """Standard basis indices that complete the basis (non-pivot columns)."""
        piv = set(self.pivots)
        return [i for i in range(self.ambient) if i not in piv]

    def matrix(self) -> Matrix:
        """Basis vectors as rows."""
        return Matrix._raw(self.basis, self.ambient) if self.basis else Matrix.zeros(0, self.ambient)

    def image(self, m: Matrix) -> "Subspace":
        if m.cols != self.ambient:
            raise DimensionError("image under a matrix of the wrong width")
        return Subspace.span([m.apply(b) for b in self.basis], m.rows)

    def preimage(self, m: Matrix) -> "Subspace":
        """``{v : m v in self}``."""
        if m.rows != self.ambient:
            raise DimensionError("preimage under a matrix of the wrong height")
        ann = self.annihilator()
        if not ann.basis:
            return Subspace.full(m.cols)
        return kernel(ann.matrix() @ m)


def kernel(m: Matrix) -> Subspace:
    """Null space of ``m`` as a canonical subspace of ``Q^cols``."""
    red, piv = rref(m._data, m.cols)
    free = [j for j in range(m.cols) if j not in set(piv)]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return Subspace.span(basis, m.cols)


def column_space(m: Matrix) -> Subspace:
    return Subspace.span(m.columns(), m.rows)


def solve(m: Matrix, b: Sequence) -> Vector | None:
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent."""
    if len(b) != m.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for a {m.rows}-row system")
    aug = [list(r) + [q(x)] for r, x in zip(m._data, b)]
    red, piv = rref(aug, m.cols + 1)
    if piv and piv[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for row, p in zip(red, piv):
        x[p] = row[m.cols]
    x = tuple(x)
    if m.apply(x) != tuple(q(y) for y in b):
        raise ArithmeticError("solution failed re-verification")
    return x

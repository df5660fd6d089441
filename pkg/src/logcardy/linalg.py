"""Exact dense linear algebra over :mod:`logcardy.scalar` fields.

Elimination is fraction-free: rows are scaled to integral form (integers,
or cyclotomic integers) and combined by cross-multiplication, dividing out
the row content after every step.  Only the final reduced echelon form is
normalized to unit pivots.

Tensor-leg convention used throughout the package: for ``kron(A, B)`` the
row index is ``i * B.nrows + k`` and the column index ``j * B.ncols + l``;
the left factor is the major index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .scalar import QQ, Cyclotomic, Field, field_of

__all__ = [
    "Matrix", "Tensor3", "Solution", "NoSolution", "Singular",
    "rref", "rank", "kernel", "solve", "invert", "transpose", "matmul", "kronecker",
    "RowReducer", "span_basis", "coordinates",
]


class NoSolution(ValueError):
    """The linear system is inconsistent."""


class Singular(ValueError):
    """Matrix is not invertible."""


def _infer_field(values: Iterable) -> Field:
    for v in values:
        if isinstance(v, Cyclotomic):
            return v.field
    return QQ


class Matrix:
    """Immutable matrix with entries in one field."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows: Sequence[Sequence], field: Field | None = None, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if field is None:
            field = _infer_field(v for r in rows for v in r)
        self.field = field
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else (ncols or 0)
        if any(len(r) != self.ncols for r in rows):
            raise ValueError("ragged matrix rows")
        self.rows = tuple(tuple(field(v) for v in r) for r in rows)

    @classmethod
    def _raw(cls, rows, field: Field, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        m.rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m.rows)
        m.ncols = ncols
        m.field = field
        return m

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        one, zero = field.one, field.zero
        return cls._raw([[one if i == j else zero for j in range(n)] for i in range(n)], field, n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> "Matrix":
        zero = field.zero
        return cls._raw([[zero] * ncols for _ in range(nrows)], field, ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: Field | None = None,
                     nrows: int | None = None) -> "Matrix":
        if not columns:
            return cls.zeros(nrows or 0, 0, field or QQ)
        return cls(list(zip(*columns)), field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> list:
        return [v for r in self.rows for v in r]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "Matrix":
        return transpose(self)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return matmul(self, other)
        return self.apply(other)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        nz = [(j, x) for j, x in enumerate(vec) if x]
        zero = self.field.zero
        out = []
        for r in self.rows:
            acc = zero
            for j, x in nz:
                a = r[j]
                if a:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.field, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.field, self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw([[-a for a in r] for r in self.rows], self.field, self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw([[a * c for a in r] for r in self.rows], self.field, self.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def is_zero(self) -> bool:
        return not any(v for r in self.rows for v in r)

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, {self.field!r})"


@dataclass(frozen=True)
class Tensor3:
    """Three-index array ``T[i, j, k]`` stored by its nonzero entries."""

    dims: tuple[int, int, int]
    data: dict
    field: Field = QQ

    def __getitem__(self, ijk):
        return self.data.get(ijk, self.field.zero)

    @classmethod
    def from_dense(cls, nested: Sequence, field: Field | None = None) -> "Tensor3":
        a = len(nested)
        b = len(nested[0]) if a else 0
        c = len(nested[0][0]) if b else 0
        if field is None:
            field = _infer_field(v for p in nested for q in p for v in q)
        data = {}
        for i in range(a):
            for j in range(b):
                if len(nested[i][j]) != c:
                    raise ValueError("ragged tensor")
                for k in range(c):
                    v = field(nested[i][j][k])
                    if v:
                        data[(i, j, k)] = v
        return cls((a, b, c), data, field)

    def to_dense(self) -> list:
        a, b, c = self.dims
        return [[[self[i, j, k] for k in range(c)] for j in range(b)] for i in range(a)]

    def nonzero(self) -> Iterator[tuple[tuple[int, int, int], object]]:
        return iter(sorted(self.data.items()))


# -- fraction-free row reduction --------------------------------------------

def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class RowReducer:
    """Incremental reduced row echelon form of a growing set of sparse rows.

    Rows are dicts ``{column: value}``.  Stored rows are integral and
    primitive; each has a distinct pivot column which is zero in every other
    stored row.
    """

    def __init__(self, ncols: int, field: Field = QQ):
        self.ncols = ncols
        self.field = field
        self._rational = field.is_rational
        self.rows: dict[int, dict] = {}  # pivot column -> row

    # integral + primitive normal form
    def _integral(self, row: dict) -> dict:
        if self._rational:
            den = 1
            for v in row.values():
                den = _lcm(den, Fraction(v).denominator)
            out = {}
            for j, v in row.items():
                v = Fraction(v)
                if v:
                    out[j] = v.numerator * (den // v.denominator)
            return out
        den = 1
        for v in row.values():
            if isinstance(v, Cyclotomic):
                den = _lcm(den, v.den)
            else:
                den = _lcm(den, Fraction(v).denominator)
        out = {}
        for j, v in row.items():
            v = self.field(v) * den
            if v:
                out[j] = v
        return out

    def _primitive(self, row: dict) -> dict:
        if not row:
            return row
        if self._rational:
            g = 0
            for v in row.values():
                g = math.gcd(g, v)
                if g == 1:
                    break
            piv = row[min(row)]
            if piv < 0:
                g = -g
            if g != 1:
                row = {j: v // g for j, v in row.items()}
            return row
        g = 0
        for v in row.values():
            for c in v.coeffs:
                if c:
                    g = math.gcd(g, c)
            if g == 1:
                return row
        if g > 1:
            f = self.field
            row = {j: Cyclotomic._make(f, tuple(c // g for c in v.coeffs), 1) for j, v in row.items()}
        return row

    def _combine(self, r: dict, p: dict, col: int) -> dict:
        # r <- p[col] * r - r[col] * p, which kills column col
        a, b = p[col], r[col]
        out = {}
        for j, v in r.items():
            out[j] = a * v
        for j, v in p.items():
            w = out.get(j)
            t = b * v
            out[j] = -t if w is None else w - t
        return {j: v for j, v in out.items() if v}

    def reduce(self, row: dict) -> dict:
        """Reduce ``row`` against the stored rows (returns integral form)."""
        r = self._integral(row)
        if not r:
            return r
        hits = [c for c in r if c in self.rows]
        while hits:
            for c in hits:
                if c in r:
                    r = self._combine(r, self.rows[c], c)
            r = self._primitive(r)
            hits = [c for c in r if c in self.rows]
        return r

    def add(self, row: dict) -> bool:
        """Insert a row; return True if it enlarged the row space."""
        r = self.reduce(row)
        if not r:
            return False
        piv = min(r)
        if self._rational and r[piv] < 0:
            r = {j: -v for j, v in r.items()}
        for c, p in list(self.rows.items()):
            if piv in p:
                self.rows[c] = self._primitive(self._combine(p, r, piv))
        self.rows[piv] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def normalized_rows(self) -> list[dict]:
        """Stored rows scaled to unit pivots, ordered by pivot column."""
        out = []
        f = self.field
        for c in self.pivots:
            p = self.rows[c]
            inv = f.one / f(p[c])
            out.append({j: f(v) * inv for j, v in p.items()})
        return out

    def kernel(self) -> list[tuple]:
        """Basis of the null space of the stored rows, one vector per free column."""
        f = self.field
        zero, one = f.zero, f.one
        piv = set(self.rows)
        rows = self.normalized_rows()
        pivcols = self.pivots
        basis = []
        for free in range(self.ncols):
            if free in piv:
                continue
            v = [zero] * self.ncols
            v[free] = one
            for c, r in zip(pivcols, rows):
                x = r.get(free)
                if x:
                    v[c] = -x
            basis.append(tuple(v))
        return basis


def _sparse(vec: Sequence) -> dict:
    return {j: v for j, v in enumerate(vec) if v}


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    red = RowReducer(A.ncols, A.field)
    for r in A.rows:
        red.add(_sparse(r))
    zero = A.field.zero
    rows = []
    for r in red.normalized_rows():
        rows.append([r.get(j, zero) for j in range(A.ncols)])
    rows += [[zero] * A.ncols for _ in range(A.nrows - len(rows))]
    return Matrix._raw(rows, A.field, A.ncols), red.pivots


def rank(A: Matrix) -> int:
    red = RowReducer(A.ncols, A.field)
    for r in A.rows:
        red.add(_sparse(r))
    return red.rank


def kernel(A: Matrix) -> list[tuple]:
    """Echelonized basis of ``{x : A x = 0}``."""
    red = RowReducer(A.ncols, A.field)
    for r in A.rows:
        red.add(_sparse(r))
    return red.kernel()


@dataclass(frozen=True)
class Solution:
    particular: tuple
    kernel_basis: list


def solve(A: Matrix, b: Sequence) -> Solution:
    """Solve ``A x = b`` exactly; raise :class:`NoSolution` if inconsistent."""
    if len(b) != A.nrows:
        raise ValueError("right-hand side has wrong length")
    n = A.ncols
    f = A.field
    red = RowReducer(n + 1, f)
    for r, bi in zip(A.rows, b):
        row = _sparse(r)
        if bi:
            row[n] = -f(bi)
        red.add(row)
    if n in red.rows:
        raise NoSolution("rank(A|b) > rank(A)")
    zero = f.zero
    x = [zero] * n
    for c, r in zip(red.pivots, red.normalized_rows()):
        x[c] = -r.get(n, zero) if n in r else zero
    kern = [v[:n] for v in red.kernel() if not v[n]]
    return Solution(tuple(x), kern)


def invert(A: Matrix) -> Matrix:
    if A.nrows != A.ncols:
        raise Singular("non-square matrix")
    n = A.nrows
    f = A.field
    red = RowReducer(2 * n, f)
    one = f.one
    for i, r in enumerate(A.rows):
        row = _sparse(r)
        row[n + i] = one
        red.add(row)
    if red.pivots[:n] != list(range(n)):
        raise Singular("matrix is rank deficient")
    zero = f.zero
    rows = [[r.get(n + j, zero) for j in range(n)] for r in red.normalized_rows()[:n]]
    return Matrix._raw(rows, f, n)


def transpose(A: Matrix) -> Matrix:
    return Matrix._raw(list(zip(*A.rows)) if A.nrows else [], A.field, A.nrows) \
        if A.ncols else Matrix.zeros(0, A.nrows, A.field)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A.ncols != B.nrows:
        raise ValueError("shape mismatch")
    zero = A.field.zero
    brows = [[(j, v) for j, v in enumerate(r) if v] for r in B.rows]
    out = []
    for r in A.rows:
        acc = [zero] * B.ncols
        for k, a in enumerate(r):
            if a:
                for j, v in brows[k]:
                    acc[j] = acc[j] + a * v
        out.append(acc)
    return Matrix._raw(out, A.field if A.field is not QQ else B.field, B.ncols)


def kronecker(A: Matrix, B: Matrix) -> Matrix:
    """Kronecker product with the left factor as major index."""
    zero = A.field.zero if A.field is not QQ else B.field.zero
    out = []
    for ra in A.rows:
        for rb in B.rows:
            row = []
            for a in ra:
                if a:
                    row.extend(a * b for b in rb)
                else:
                    row.extend([zero] * B.ncols)
            out.append(row)
    field = A.field if A.field is not QQ else B.field
    return Matrix._raw(out, field, A.ncols * B.ncols)


def span_basis(vectors: Iterable[Sequence], dim: int, field: Field) -> list[tuple]:
    """Reduced echelon basis of the span of ``vectors``."""
    red = RowReducer(dim, field)
    for v in vectors:
        red.add(_sparse(v))
    zero = field.zero
    return [tuple(r.get(j, zero) for j in range(dim)) for r in red.normalized_rows()]


def coordinates(basis: Sequence[Sequence], v: Sequence, field: Field) -> tuple | None:
    """Coefficients c with ``sum c_i basis_i = v``, or None if v is outside the span.

    Raises ValueError if the basis vectors are linearly dependent.
    """
    A = Matrix.from_columns(basis, field, nrows=len(v)) if basis else None
    if A is None:
        return () if not any(v) else None
    try:
        sol = solve(A, v)
    except NoSolution:
        return None
    if sol.kernel_basis:
        raise ValueError("basis vectors are linearly dependent")
    return sol.particular


def field_for(*items) -> Field:
    for it in items:
        f = field_of(it) if not isinstance(it, Field) else it
        if not f.is_rational:
            return f
    return QQ

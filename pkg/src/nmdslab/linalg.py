"""Exact dense linear algebra over a finite field.

Row reduction is fully deterministic: pivots are the first nonzero entry in
column order with rows processed top-down (no magnitude concept exists in an
exact field), so rank, pivot columns and the canonical nullspace basis are
reproducible across runs.  Matrices are immutable after construction.
"""

from __future__ import annotations

from .gf import FieldElement, FieldSpec


class MatrixGF:
    """Dense row-major matrix of :class:`FieldElement` entries."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data):
        data = tuple(data)
        if len(data) != rows * cols:
            raise ValueError("data length does not match dimensions")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> "MatrixGF":
        """Build from rows of elements; plain ints are canonical indices."""
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        flat = []
        for r in rows:
            for x in r:
                flat.append(x if isinstance(x, FieldElement) else field.from_index(x))
        return cls(field, len(rows), ncols, flat)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "MatrixGF":
        z, o = field.zero(), field.one()
        return cls(field, n, n, [o if i == j else z
                                 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, field: FieldSpec, rows: int, cols: int) -> "MatrixGF":
        return cls(field, rows, cols, [field.zero()] * (rows * cols))

    def entry(self, i: int, j: int) -> FieldElement:
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple[FieldElement, ...]:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[FieldElement, ...]:
        return tuple(self.data[i * self.cols + j] for i in range(self.rows))

    def column_select(self, cols) -> "MatrixGF":
        cols = list(cols)
        flat = [self.data[i * self.cols + j] for i in range(self.rows) for j in cols]
        return MatrixGF(self.field, self.rows, len(cols), flat)

    def transpose(self) -> "MatrixGF":
        flat = [self.data[i * self.cols + j]
                for j in range(self.cols) for i in range(self.rows)]
        return MatrixGF(self.field, self.cols, self.rows, flat)

    def __eq__(self, other):
        return (isinstance(other, MatrixGF) and self.field == other.field
                and (self.rows, self.cols) == (other.rows, other.cols)
                and self.data == other.data)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.data))

    def __repr__(self):
        return f"MatrixGF({self.rows}x{self.cols} over GF({self.field.p}^{self.field.m}))"


def rref(a: MatrixGF) -> tuple[MatrixGF, int, list[int]]:
    """Reduced row echelon form with unit pivots.

    Returns (R, rank, pivot_cols).  Pivot choice: first nonzero entry in the
    current column scanning rows top-down.
    """
    field = a.field
    m = [list(a.row(i)) for i in range(a.rows)]
    pivot_cols: list[int] = []
    pr = 0
    for col in range(a.cols):
        sel = None
        for r in range(pr, a.rows):
            if not m[r][col].is_zero():
                sel = r
                break
        if sel is None:
            continue
        m[pr], m[sel] = m[sel], m[pr]
        inv = m[pr][col].inv()
        m[pr] = [x * inv for x in m[pr]]
        for r in range(a.rows):
            if r != pr and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[pr])]
        pivot_cols.append(col)
        pr += 1
        if pr == a.rows:
            break
    flat = [x for row in m for x in row]
    return MatrixGF(field, a.rows, a.cols, flat), len(pivot_cols), pivot_cols


def rank(a: MatrixGF) -> int:
    return rref(a)[1]


def nullspace(a: MatrixGF) -> list[tuple[FieldElement, ...]]:
    """Canonical basis of {x : a.x = 0}, one vector per rref free column."""
    field = a.field
    r, rk, pivots = rref(a)
    pivot_set = set(pivots)
    free = [j for j in range(a.cols) if j not in pivot_set]
    basis = []
    zero, one = field.zero(), field.one()
    for fcol in free:
        v = [zero] * a.cols
        v[fcol] = one
        for i, pcol in enumerate(pivots):
            v[pcol] = -r.entry(i, fcol)
        basis.append(tuple(v))
    return basis


def det(a: MatrixGF) -> FieldElement:
    """Exact determinant: closed form up to 3x3, Gaussian elimination above."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    field = a.field
    n = a.rows
    if n == 0:
        return field.one()
    e = a.entry
    if n == 1:
        return e(0, 0)
    if n == 2:
        return e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0)
    if n == 3:
        return (e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
                - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0)))
    m = [list(a.row(i)) for i in range(n)]
    sign_flip = False
    acc = field.one()
    for col in range(n):
        sel = None
        for r in range(col, n):
            if not m[r][col].is_zero():
                sel = r
                break
        if sel is None:
            return field.zero()
        if sel != col:
            m[col], m[sel] = m[sel], m[col]
            sign_flip = not sign_flip
        piv = m[col][col]
        acc = acc * piv
        inv = piv.inv()
        for r in range(col + 1, n):
            if not m[r][col].is_zero():
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return -acc if sign_flip else acc


def mat_mul(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    if a.field != b.field:
        raise ValueError("matrices over different fields")
    if a.cols != b.rows:
        raise ValueError("dimension mismatch")
    zero = a.field.zero()
    out = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            acc = zero
            for t, x in enumerate(arow):
                if not x.is_zero():
                    acc = acc + x * b.entry(t, j)
            out.append(acc)
    return MatrixGF(a.field, a.rows, b.cols, out)


def mat_vec(a: MatrixGF, v) -> tuple[FieldElement, ...]:
    v = list(v)
    if len(v) != a.cols:
        raise ValueError("dimension mismatch")
    zero = a.field.zero()
    out = []
    for i in range(a.rows):
        acc = zero
        for x, y in zip(a.row(i), v):
            if not x.is_zero() and not y.is_zero():
                acc = acc + x * y
        out.append(acc)
    return tuple(out)

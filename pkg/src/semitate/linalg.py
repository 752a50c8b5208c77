"""Exact dense linear algebra over prime fields GF(p) and the rationals.

Reduced row echelon form is the single primitive; kernels, solves, ranks
and column-space bases are all derived from it.  RREF is unique for a
given row space, so every basis handed out here is canonical: identical
inputs give identical outputs.  Downstream code leans on that to keep
resolutions, homology bases and CLI tables reproducible across runs.

GF(p) elimination runs on vectorized numpy int64 buffers; the maximum
modulus is capped so a full row operation cannot overflow 64 bits.
Rational matrices use Fraction arithmetic and stay practical only at
small sizes, which is all the rational fixtures need.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

# dim * (p-1)**2 must fit in int64 for dims up to ~2000
MAX_PRIME = 1 << 20
MAX_DIM = 4096


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """GF(p) for prime p, or the rationals when p is None."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None:
            if self.p > MAX_PRIME:
                raise ValueError(f"modulus {self.p} exceeds supported bound {MAX_PRIME}")
            if not _is_prime(self.p):
                raise ValueError(f"modulus {self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def normalize(self, x):
        if self.p is None:
            return x if isinstance(x, Fraction) else Fraction(x)
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(x)
        return pow(int(x) % self.p, self.p - 2, self.p)

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix; entries row-major, canonical field scalars."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    @staticmethod
    def from_rows(field: Field, rowlists) -> "Matrix":
        rowlists = [list(r) for r in rowlists]
        rows = len(rowlists)
        cols = len(rowlists[0]) if rows else 0
        if any(len(r) != cols for r in rowlists):
            raise ValueError("ragged rows")
        ent = tuple(field.normalize(x) for r in rowlists for x in r)
        return Matrix(field, rows, cols, ent)

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Matrix":
        z = field.normalize(0)
        return Matrix(field, rows, cols, (z,) * (rows * cols))

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        z, o = field.normalize(0), field.normalize(1)
        ent = tuple(o if i == j else z for i in range(n) for j in range(n))
        return Matrix(field, n, n, ent)

    @staticmethod
    def column(field: Field, values) -> "Matrix":
        return Matrix.from_rows(field, [[v] for v in values])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j :: self.cols] if self.cols else ()

    def col_matrix(self, j: int) -> "Matrix":
        return Matrix(self.field, self.rows, 1, self.col(j))

    # -- arithmetic -------------------------------------------------

    def _np(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    @staticmethod
    def _of_np(field: Field, a: np.ndarray) -> "Matrix":
        r, c = a.shape
        return Matrix(field, r, c, tuple(int(x) for x in a.reshape(-1)))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        f = self.field
        ent = tuple(f.normalize(a + b) for a, b in zip(self.entries, other.entries))
        return Matrix(f, self.rows, self.cols, ent)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        f = self.field
        ent = tuple(f.normalize(a - b) for a, b in zip(self.entries, other.entries))
        return Matrix(f, self.rows, self.cols, ent)

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(f.normalize(-a) for a in self.entries))

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.normalize(c)
        return Matrix(f, self.rows, self.cols, tuple(f.normalize(c * a) for a in self.entries))

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        f = self.field
        if not f.is_rational:
            if self.rows == 0 or other.cols == 0 or self.cols == 0:
                return Matrix.zeros(f, self.rows, other.cols)
            prod = (self._np() @ other._np()) % f.p
            return Matrix._of_np(f, prod)
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            out.append(
                [sum((ri[k] * other.entries[k * other.cols + j] for k in range(self.cols)), Fraction(0))
                 for j in range(other.cols)]
            )
        return Matrix.from_rows(f, out) if self.rows else Matrix.zeros(f, 0, other.cols)

    def transpose(self) -> "Matrix":
        ent = tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows))
        return Matrix(self.field, self.cols, self.rows, ent)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def _same_shape(self, other: "Matrix") -> None:
        if self.field != other.field or self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape or field mismatch")

    def __str__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"[{body}]"


# -- stacking helpers ----------------------------------------------


def hstack(mats) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ValueError("hstack of nothing")
    f, r = mats[0].field, mats[0].rows
    if any(m.rows != r or m.field != f for m in mats):
        raise ValueError("hstack shape mismatch")
    rows = [sum((list(m.row(i)) for m in mats), []) for i in range(r)]
    if r == 0:
        return Matrix.zeros(f, 0, sum(m.cols for m in mats))
    return Matrix.from_rows(f, rows)


def vstack(mats) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ValueError("vstack of nothing")
    f, c = mats[0].field, mats[0].cols
    if any(m.cols != c or m.field != f for m in mats):
        raise ValueError("vstack shape mismatch")
    ent = sum((list(m.entries) for m in mats), [])
    return Matrix(f, sum(m.rows for m in mats), c, tuple(f.normalize(x) for x in ent))


def block_matrix(grid) -> Matrix:
    """Assemble from a 2d list of blocks (row-consistent heights, col widths)."""
    return vstack([hstack(row) for row in grid])


def block_diag(field: Field, mats) -> Matrix:
    mats = list(mats)
    total_r = sum(m.rows for m in mats)
    total_c = sum(m.cols for m in mats)
    out = [[field.normalize(0)] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            row = m.row(i)
            for j in range(m.cols):
                out[r0 + i][c0 + j] = row[j]
        r0 += m.rows
        c0 += m.cols
    if total_r == 0:
        return Matrix.zeros(field, 0, total_c)
    return Matrix.from_rows(field, out)


# -- elimination core ----------------------------------------------


def _rref_gfp(a: np.ndarray, p: int):
    a = a.copy() % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def _rref_qq(rows: list[list[Fraction]]):
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def echelon(m: Matrix):
    """Reduced row echelon form.  Returns (rref, pivot column tuple, rank)."""
    if m.rows == 0 or m.cols == 0:
        return m, (), 0
    if m.field.is_rational:
        rows, pivots = _rref_qq([list(m.row(i)) for i in range(m.rows)])
        return Matrix.from_rows(m.field, rows), tuple(pivots), len(pivots)
    arr, pivots = _rref_gfp(m._np(), m.field.p)
    return Matrix._of_np(m.field, arr), tuple(pivots), len(pivots)


def rank(m: Matrix) -> int:
    return echelon(m)[2]


def kernel_basis(m: Matrix) -> Matrix:
    """Canonical right-kernel basis: free variables set to 1 in ascending order."""
    f = m.field
    if m.cols == 0:
        return Matrix.zeros(f, 0, 0)
    if m.rows == 0:
        return Matrix.identity(f, m.cols)
    red, pivots, r = echelon(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    cols = []
    for fc in free:
        v = [f.normalize(0)] * m.cols
        v[fc] = f.normalize(1)
        for ri, pc in enumerate(pivots):
            v[pc] = f.normalize(-red[ri, fc])
        cols.append(v)
    if not cols:
        return Matrix.zeros(f, m.cols, 0)
    return Matrix.from_rows(f, [[c[i] for c in cols] for i in range(m.cols)])


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Particular solution X of A X = B with free variables at zero, or None."""
    if a.rows != b.rows:
        raise ValueError(f"solve: row mismatch {a.rows} vs {b.rows}")
    if a.field != b.field:
        raise ValueError("solve: field mismatch")
    f = a.field
    if b.cols == 0:
        return Matrix.zeros(f, a.cols, 0)
    if a.cols == 0:
        return None if not b.is_zero() else Matrix.zeros(f, 0, b.cols)
    red, pivots, r = echelon(hstack([a, b]))
    for p in pivots:
        if p >= a.cols:
            return None
    x = [[f.normalize(0)] * b.cols for _ in range(a.cols)]
    for ri, pc in enumerate(pivots):
        for j in range(b.cols):
            x[pc][j] = red[ri, a.cols + j]
    return Matrix.from_rows(f, x)


def column_space_basis(m: Matrix) -> Matrix:
    """Canonical basis of the column space (echelon rows of the transpose)."""
    red, pivots, r = echelon(m.transpose())
    if r == 0:
        return Matrix.zeros(m.field, m.rows, 0)
    rows = [list(red.row(i)) for i in range(r)]
    return Matrix.from_rows(m.field, rows).transpose()


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; index order (row-of-a, row-of-b) lexicographic."""
    if a.field != b.field:
        raise ValueError("kron: field mismatch")
    f = a.field
    rows, cols = a.rows * b.rows, a.cols * b.cols
    if rows == 0 or cols == 0:
        return Matrix.zeros(f, rows, cols)
    if not f.is_rational:
        return Matrix._of_np(f, np.kron(a._np(), b._np()) % f.p)
    out = []
    for ia in range(a.rows):
        for ib in range(b.rows):
            row = []
            for ja in range(a.cols):
                x = a[ia, ja]
                row.extend(x * b[ib, jb] for jb in range(b.cols))
            out.append(row)
    return Matrix.from_rows(f, out)


def submatrix(m: Matrix, rows, cols) -> Matrix:
    """Pick out rows and columns by index list (or range)."""
    rr, cc = list(rows), list(cols)
    ent = tuple(m[i, j] for i in rr for j in cc)
    return Matrix(m.field, len(rr), len(cc), ent)


def vec(m: Matrix) -> Matrix:
    """Row-major vectorization as a column; inverse of unvec."""
    return Matrix(m.field, m.rows * m.cols, 1, m.entries)


def unvec(field: Field, rows: int, cols: int, v: Matrix) -> Matrix:
    if v.rows != rows * cols or v.cols != 1:
        raise ValueError("unvec shape mismatch")
    return Matrix(field, rows, cols, v.entries)


def invert(m: Matrix) -> Matrix | None:
    """Inverse of a square matrix, or None when singular."""
    if m.rows != m.cols:
        return None
    sol = solve(m, Matrix.identity(m.field, m.rows))
    if sol is None:
        return None
    return sol if (m * sol) == Matrix.identity(m.field, m.rows) else None

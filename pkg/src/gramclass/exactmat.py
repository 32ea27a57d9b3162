"""Exact integer and rational linear algebra.

Matrices are dense, immutable and hold Python integers, so every identity
checked elsewhere in the package is an exact equality. Rational arithmetic
(:class:`fractions.Fraction`) is used internally for eliminations and the
results are converted back to integers with an explicit integrality check.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    NoSolution,
    NonIntegerSolution,
    NotInvertible,
    NotSkewSymmetric,
    NotSquare,
    NotSymmetric,
    ShapeMismatch,
    Underdetermined,
)

__all__ = [
    "IntMatrix",
    "PolyZ",
    "block_diag",
    "char_poly",
    "det",
    "hnf",
    "inverse",
    "kernel_basis",
    "psd_rank",
    "rank",
    "skew_normal_form",
    "solve_exact",
    "symplectic_unit",
]


class IntMatrix:
    """Immutable dense matrix of arbitrary-precision integers.

    Parameters
    ----------
    data : iterable of iterables of int
        Row-major entries.
    shape : (int, int), optional
        Needed only to build matrices with zero rows or zero columns.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable[int]] = (), shape: tuple[int, int] | None = None):
        body = tuple(tuple(operator.index(x) for x in row) for row in data)
        if shape is None:
            rows = len(body)
            cols = len(body[0]) if rows else 0
        else:
            rows, cols = shape
            if rows and not body:
                body = tuple((0,) * cols for _ in range(rows))
        if len(body) != rows or any(len(r) != cols for r in body):
            raise ShapeMismatch(f"ragged or mis-shaped matrix data for shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data = body

    # construction helpers
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], shape=(rows, cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], shape=(n, n))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        cols = len(columns)
        return cls([[columns[j][i] for j in range(cols)] for i in range(rows)], shape=(rows, cols))

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence[int]) -> "IntMatrix":
        if len(entries) != rows * cols:
            raise ShapeMismatch(f"expected {rows * cols} entries, got {len(entries)}")
        return cls([entries[i * cols:(i + 1) * cols] for i in range(rows)], shape=(rows, cols))

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for row in self._data for x in row)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "IntMatrix":
        """Submatrix of rows ``r0:r1`` and columns ``c0:c1``."""
        return IntMatrix([r[c0:c1] for r in self._data[r0:r1]], shape=(r1 - r0, c1 - c0))

    def select_columns(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[r[j] for j in idx] for r in self._data], shape=(self.rows, len(idx)))

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(zip(*self._data), shape=(self.cols, self.rows)) if self.rows else IntMatrix.zeros(self.cols, 0)

    # predicates
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    def is_upper_unitriangular(self) -> bool:
        return self.is_square() and all(
            self._data[i][j] == (1 if i == j else 0)
            for i in range(self.rows)
            for j in range(i + 1)
        )

    def is_permutation(self) -> bool:
        if not self.is_square():
            return False
        ok_rows = all(sorted(r) == [0] * (self.cols - 1) + [1] for r in self._data)
        ok_cols = all(sum(self.col(j)) == 1 for j in range(self.cols))
        return ok_rows and ok_cols

    # arithmetic
    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            shape=self.shape,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self._data], shape=self.shape)

    def __mul__(self, k: int) -> "IntMatrix":
        k = operator.index(k)
        return IntMatrix([[k * a for a in r] for r in self._data], shape=self.shape)

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._data],
            shape=(self.rows, other.cols),
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ShapeMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self._data)

    def __pow__(self, k: int) -> "IntMatrix":
        if not self.is_square() or k < 0:
            raise NotSquare("matrix powers need a square matrix and k >= 0")
        out, base = IntMatrix.identity(self.rows), self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        mats = (self,) + others
        if any(m.rows != self.rows for m in mats):
            raise ShapeMismatch("hstack needs equal row counts")
        return IntMatrix(
            [sum((m._data[i] for m in mats), ()) for i in range(self.rows)],
            shape=(self.rows, sum(m.cols for m in mats)),
        )

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        mats = (self,) + others
        if any(m.cols != self.cols for m in mats):
            raise ShapeMismatch("vstack needs equal column counts")
        return IntMatrix(
            [r for m in mats for r in m._data],
            shape=(sum(m.rows for m in mats), self.cols),
        )

    def strict_upper(self) -> "IntMatrix":
        return IntMatrix(
            [[a if j > i else 0 for j, a in enumerate(r)] for i, r in enumerate(self._data)],
            shape=self.shape,
        )

    def strict_lower(self) -> "IntMatrix":
        return IntMatrix(
            [[a if j < i else 0 for j, a in enumerate(r)] for i, r in enumerate(self._data)],
            shape=self.shape,
        )

    # dunder plumbing
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, shape={self.shape})"

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self._data)


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out[r0 + i][c0:c0 + b.cols] = b.row(i)
        r0 += b.rows
        c0 += b.cols
    return IntMatrix(out, shape=(rows, cols))


def symplectic_unit(r: int, zeros: int = 0) -> IntMatrix:
    """The block matrix ``W1 + ... + W1 + 0`` with ``r`` copies of [[0,1],[-1,0]]."""
    w1 = IntMatrix([[0, 1], [-1, 0]])
    return block_diag(*([w1] * r), IntMatrix.zeros(zeros, zeros))


# ---------------------------------------------------------------------------
# rational elimination


def _echelon(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form on the first
    ``ncols`` columns and return the pivot columns."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(M: IntMatrix) -> int:
    rows = [[Fraction(x) for x in M.row(i)] for i in range(M.rows)]
    return len(_echelon(rows, M.cols))


def det(M: IntMatrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    if not M.is_square():
        raise NotSquare(f"determinant of a {M.rows}x{M.cols} matrix")
    n = M.rows
    a = M.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def solve_exact(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Unique integer ``X`` with ``A @ X == B``.

    Raises
    ------
    Underdetermined
        ``A`` does not have full column rank.
    NoSolution
        The system is inconsistent over the rationals.
    NonIntegerSolution
        The unique rational solution has a non-integral entry.
    """
    if A.rows != B.rows:
        raise ShapeMismatch(f"A has {A.rows} rows but B has {B.rows}")
    k = A.cols
    aug = [[Fraction(x) for x in A.row(i) + B.row(i)] for i in range(A.rows)]
    pivots = _echelon(aug, k)
    if len(pivots) < k:
        raise Underdetermined(f"coefficient matrix has rank {len(pivots)} < {k} columns")
    if any(x != 0 for row in aug[k:] for x in row[k:]):
        raise NoSolution("inconsistent linear system")
    out = []
    for row in aug[:k]:
        vals = row[k:]
        if any(v.denominator != 1 for v in vals):
            raise NonIntegerSolution("rational solution is not integral")
        out.append([int(v) for v in vals])
    return IntMatrix(out, shape=(k, B.cols))


def inverse(M: IntMatrix) -> IntMatrix:
    """Integer inverse of a unimodular matrix."""
    if not M.is_square():
        raise NotSquare(f"inverse of a {M.rows}x{M.cols} matrix")
    try:
        return solve_exact(M, IntMatrix.identity(M.rows))
    except (Underdetermined, NoSolution) as exc:
        raise NotInvertible("matrix is singular") from exc
    except NonIntegerSolution as exc:
        raise NotInvertible("matrix is not invertible over the integers") from exc


# ---------------------------------------------------------------------------
# Hermite normal form and kernels


def hnf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``M @ U == H``. ``H`` is in
    lower echelon form, its pivots are positive and every entry to the left
    of a pivot lies in ``[0, pivot)``. Zero columns of ``H`` come last.
    """
    m, n = M.shape
    h = [list(M.col(j)) for j in range(n)]  # columns of H
    u = [[int(i == j) for i in range(n)] for j in range(n)]  # columns of U

    def axpy(dst: int, src: int, q: int) -> None:
        # column dst -= q * column src
        if q:
            h[dst] = [a - q * b for a, b in zip(h[dst], h[src])]
            u[dst] = [a - q * b for a, b in zip(u[dst], u[src])]

    p = 0
    for i in range(m):
        if p == n:
            break
        while True:
            nz = [j for j in range(p, n) if h[j][i] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(h[j][i]))
            h[p], h[j0] = h[j0], h[p]
            u[p], u[j0] = u[j0], u[p]
            done = True
            for j in range(p + 1, n):
                if h[j][i]:
                    axpy(j, p, h[j][i] // h[p][i])
                    done = done and h[j][i] == 0
            if done:
                break
        if all(h[j][i] == 0 for j in range(p, n)):
            continue
        if h[p][i] < 0:
            h[p] = [-a for a in h[p]]
            u[p] = [-a for a in u[p]]
        for j in range(p):
            axpy(j, p, h[j][i] // h[p][i])
        p += 1
    return IntMatrix.from_columns(h, m), IntMatrix.from_columns(u, n)


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Columns forming a basis of the integer kernel lattice of ``M``."""
    H, U = hnf(M)
    r = sum(1 for j in range(H.cols) if any(H.col(j)))
    return U.block(0, U.rows, r, U.cols)


# ---------------------------------------------------------------------------
# characteristic polynomial


class PolyZ:
    """Univariate integer polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [operator.index(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> "PolyZ":
        return cls([0] * k + [a])

    @classmethod
    def x_pow_minus_one(cls, k: int) -> "PolyZ":
        """The polynomial ``v**k - 1``."""
        return cls.monomial(k) - cls([1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "PolyZ") -> "PolyZ":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return PolyZ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self) -> "PolyZ":
        return PolyZ(-x for x in self.coeffs)

    def __sub__(self, other: "PolyZ") -> "PolyZ":
        return self + (-other)

    def __mul__(self, other: "PolyZ") -> "PolyZ":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyZ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return PolyZ(out)

    def __pow__(self, k: int) -> "PolyZ":
        out = PolyZ([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def divmod_monic(self, d: "PolyZ") -> tuple["PolyZ", "PolyZ"]:
        """Quotient and remainder by a monic divisor."""
        if not d.coeffs or d.coeffs[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        k = d.degree
        quot = [0] * max(len(rem) - k, 0)
        for i in range(len(rem) - 1, k - 1, -1):
            q = rem[i]
            if q:
                quot[i - k] = q
                for j, b in enumerate(d.coeffs):
                    rem[i - k + j] -= q * b
        return PolyZ(quot), PolyZ(rem[:k])

    def root_multiplicity(self, root: int) -> int:
        """Multiplicity of an integer root, 0 if not a root."""
        if not self.coeffs:
            raise ValueError("the zero polynomial has every root")
        lin = PolyZ([-root, 1])
        p, k = self, 0
        while True:
            q, r = p.divmod_monic(lin)
            if r.coeffs:
                return k
            p, k = q, k + 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyZ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PolyZ({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            mag = abs(a)
            mono = "" if k == 0 else ("v" if k == 1 else f"v^{k}")
            body = str(mag) if (mag != 1 or k == 0) else ""
            body = body + ("*" if body and mono else "") + mono
            sign = "-" if a < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def char_poly(M: IntMatrix) -> PolyZ:
    """``det(v I - M)`` by the division-free Berkowitz recurrence."""
    if not M.is_square():
        raise NotSquare(f"characteristic polynomial of a {M.rows}x{M.cols} matrix")
    n = M.rows
    a = M.tolist()
    c = [1]  # highest degree first
    for r in range(n):
        row = a[r][:r]
        col = [a[i][r] for i in range(r)]
        toeplitz = [1, -a[r][r]]
        v = col
        for _ in range(r):
            toeplitz.append(-sum(x * y for x, y in zip(row, v)))
            v = [sum(a[i][j] * v[j] for j in range(r)) for i in range(r)]
        c = [
            sum(toeplitz[i - j] * c[j] for j in range(len(c)) if 0 <= i - j < len(toeplitz))
            for i in range(r + 2)
        ]
    return PolyZ(reversed(c))


# ---------------------------------------------------------------------------
# symmetric and skew-symmetric forms


def _require_skew(Z: IntMatrix) -> None:
    if not Z.is_square() or Z.T != -Z:
        raise NotSkewSymmetric("matrix is not skew-symmetric")


def skew_normal_form(Z: IntMatrix) -> tuple[IntMatrix, tuple[int, ...]]:
    """Unimodular ``P`` and invariants ``d`` with
    ``P.T @ Z @ P == d1*W1 + ... + dr*W1 + 0`` and ``d[t] | d[t+1]``.

    Newman-style reduction: bring the smallest nonzero entry to the
    leading 2x2 block, clear its two rows and columns, push any entry of
    the complement that is not a multiple of the pivot back into the
    pivot row, repeat.
    """
    _require_skew(Z)
    n = Z.rows
    a = Z.tolist()
    p = [[int(i == j) for j in range(n)] for i in range(n)]

    def add(dst: int, src: int, q: int) -> None:
        # congruence by E = I + q e_src e_dst^T: column and row dst += q * src
        if not q:
            return
        for r in range(n):
            a[r][dst] += q * a[r][src]
        for c in range(n):
            a[dst][c] += q * a[src][c]
        for r in range(n):
            p[r][dst] += q * p[r][src]

    def swap(i: int, j: int) -> None:
        if i == j:
            return
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
            p[r][i], p[r][j] = p[r][j], p[r][i]
        a[i], a[j] = a[j], a[i]

    d: list[int] = []
    k = 0
    while k + 1 < n:
        nz = [(abs(a[i][j]), i, j) for i in range(k, n) for j in range(k, n) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        if i > j:
            i, j = j, i
        swap(k, i)
        swap(k + 1, j)
        if a[k][k + 1] < 0:
            swap(k, k + 1)
        piv = a[k][k + 1]
        restart = False
        for j in range(k + 2, n):
            add(j, k + 1, -(a[k][j] // piv))
            if a[k][j]:
                restart = True
                break
            add(j, k, a[k + 1][j] // piv)
            if a[k + 1][j]:
                restart = True
                break
        if restart:
            continue
        bad = next(
            ((i, j) for i in range(k + 2, n) for j in range(k + 2, n) if a[i][j] % piv),
            None,
        )
        if bad is not None:
            add(k, bad[0], 1)
            continue
        d.append(piv)
        k += 2
    return IntMatrix(p), tuple(d)


def psd_rank(S: IntMatrix) -> tuple[bool, int]:
    """Positive semi-definiteness and rational rank of a symmetric matrix.

    Rational symmetric elimination on diagonal pivots; the form is
    semi-definite iff every pivot is positive and no nonzero entry
    survives once the remaining diagonal is zero.
    """
    if not S.is_square() or S.T != S:
        raise NotSymmetric("matrix is not symmetric")
    n = S.rows
    a = [[Fraction(x) for x in S.row(i)] for i in range(n)]
    live = list(range(n))
    psd = True
    while live:
        piv = next((i for i in live if a[i][i] != 0), None)
        if piv is None:
            if any(a[i][j] for i in live for j in live):
                psd = False
            break
        if a[piv][piv] < 0:
            psd = False
        live.remove(piv)
        for i in live:
            f = a[i][piv] / a[piv][piv]
            if f:
                for j in live:
                    a[i][j] -= f * a[piv][j]
    return psd, rank(S)

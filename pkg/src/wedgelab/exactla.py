"""Exact rational dense linear algebra.

Everything here works over :class:`fractions.Fraction`. Matrices are small
(ad-matrices of sl(6) are 35x35), so dense row storage is fine, but the
products skip zero entries because Lie-algebra matrices are very sparse.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

# Coefficients of lambda^3 - lambda, lowest degree first.
EULER_POLY = (0, -1, 0, 1)


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected on purpose: silently importing a binary float
    would defeat the point of exact arithmetic.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def rational_str(q: Fraction) -> str:
    return str(q)


class RatMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable) -> None:
        data = tuple(to_rational(e) for e in entries)
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self._data = tuple(data[i * cols:(i + 1) * cols] for i in range(rows))
        self._hash = None

    @classmethod
    def _from_rows(cls, rows: Sequence[Sequence[Fraction]], cols: int) -> "RatMatrix":
        m = cls.__new__(cls)
        m.rows = len(rows)
        m.cols = cols
        m._data = tuple(tuple(r) for r in rows)
        m._hash = None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, [])
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        z = Fraction(0)
        return cls._from_rows([[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        vals = [to_rational(v) for v in values]
        z = Fraction(0)
        return cls._from_rows([[vals[i] if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "RatMatrix":
        """Matrix unit E_ij (0-based indices)."""
        z, one = Fraction(0), Fraction(1)
        return cls._from_rows([[one if (r, c) == (i, j) else z for c in range(n)] for r in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RatMatrix":
        if not columns:
            raise ValueError("need at least one column")
        nrows = len(columns[0])
        return cls._from_rows(
            [[to_rational(columns[j][i]) for j in range(len(columns))] for i in range(nrows)],
            len(columns),
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(e for r in self._data for e in r)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self._data[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in r) for r in self._data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return all(e == 0 for r in self._data for e in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_diagonal(self) -> bool:
        return all(e == 0 for i, r in enumerate(self._data) for j, e in enumerate(r) if i != j)

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self._data[i][i] for i in range(min(self.rows, self.cols)))

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError("trace of non-square matrix")
        return sum(self.diagonal(), Fraction(0))

    def transpose(self) -> "RatMatrix":
        return RatMatrix._from_rows([list(c) for c in zip(*self._data)] if self.rows else [], self.rows)

    T = property(transpose)

    def _check_same_shape(self, other: "RatMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix._from_rows(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.cols
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix._from_rows(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.cols
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix._from_rows([[-a for a in r] for r in self._data], self.cols)

    def scale(self, c) -> "RatMatrix":
        c = to_rational(c)
        return RatMatrix._from_rows([[c * a for a in r] for r in self._data], self.cols)

    def __mul__(self, c) -> "RatMatrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        z = Fraction(0)
        other_sparse = [[(j, b) for j, b in enumerate(r) if b] for r in other._data]
        out = []
        for r in self._data:
            acc = [z] * other.cols
            for k, a in enumerate(r):
                if a:
                    for j, b in other_sparse[k]:
                        acc[j] += a * b
            out.append(acc)
        return RatMatrix._from_rows(out, other.cols)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        nz = [(k, to_rational(x)) for k, x in enumerate(v) if x]
        return tuple(sum((r[k] * x for k, x in nz), Fraction(0)) for r in self._data)

    def commutator(self, other: "RatMatrix") -> "RatMatrix":
        return self @ other - other @ self

    def power(self, k: int) -> "RatMatrix":
        if not self.is_square():
            raise ValueError("power of non-square matrix")
        result = RatMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return RatMatrix._from_rows(list(self._data) + list(other._data), self.cols)

    def to_float(self):
        import numpy as np

        return np.array([[float(e) for e in r] for r in self._data], dtype=float)

    def to_json(self) -> list[list[str]]:
        return [[rational_str(e) for e in r] for r in self._data]

    @classmethod
    def from_json(cls, rows) -> "RatMatrix":
        return cls.from_rows(rows)


def rref(M: RatMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with first-nonzero pivoting.

    Returns the reduced rows and the pivot column indices.
    """
    A = [list(r) for r in M._data]
    pivots: list[int] = []
    prow = 0
    for c in range(M.cols):
        if prow == M.rows:
            break
        pr = next((r for r in range(prow, M.rows) if A[r][c] != 0), None)
        if pr is None:
            continue
        A[prow], A[pr] = A[pr], A[prow]
        inv = 1 / A[prow][c]
        A[prow] = [x * inv for x in A[prow]]
        pivot_row = A[prow]
        nz = [(j, x) for j, x in enumerate(pivot_row) if x]
        for r in range(M.rows):
            f = A[r][c]
            if r != prow and f != 0:
                row = A[r]
                for j, x in nz:
                    row[j] -= f * x
        pivots.append(c)
        prow += 1
    return A, pivots


def rank(M: RatMatrix) -> int:
    return len(rref(M)[1])


def rat_kernel(M: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the null space, one vector per free column."""
    A, pivots = rref(M)
    pivset = set(pivots)
    free = [c for c in range(M.cols) if c not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -A[i][f]
        basis.append(tuple(v))
    return basis


def rat_solve(M: RatMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """Some x with M x = b, or None when the system is inconsistent."""
    if len(b) != M.rows:
        raise ValueError("right-hand side length mismatch")
    aug = RatMatrix._from_rows(
        [list(r) + [to_rational(bi)] for r, bi in zip(M._data, b)], M.cols + 1
    )
    A, pivots = rref(aug)
    if pivots and pivots[-1] == M.cols:
        return None
    x = [Fraction(0)] * M.cols
    for i, p in enumerate(pivots):
        x[p] = A[i][M.cols]
    return tuple(x)


def rat_inverse(M: RatMatrix) -> RatMatrix:
    if not M.is_square():
        raise ValueError("inverse of non-square matrix")
    n = M.rows
    aug = RatMatrix._from_rows(
        [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M._data)], 2 * n
    )
    A, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return RatMatrix._from_rows([row[n:] for row in A[:n]], n)


def poly_eval(M: RatMatrix, coeffs: Sequence) -> RatMatrix:
    """p(M) by Horner's rule; coefficients lowest degree first."""
    if not M.is_square():
        raise ValueError("polynomial of a non-square matrix")
    n = M.rows
    I = RatMatrix.identity(n)
    acc = RatMatrix.zeros(n, n)
    for c in reversed([to_rational(c) for c in coeffs]):
        acc = acc @ M + I.scale(c)
    return acc


def annihilates(M: RatMatrix, coeffs: Sequence) -> bool:
    """True iff p(M) = 0 exactly (coefficients lowest degree first)."""
    if not M.is_square():
        raise ValueError(f"annihilates needs a square matrix, got {M.shape}")
    return poly_eval(M, coeffs).is_zero()


def charpoly(M: RatMatrix) -> tuple[Fraction, ...]:
    """Characteristic polynomial det(lambda I - M), lowest degree first.

    Faddeev-LeVerrier; exact over the rationals.
    """
    if not M.is_square():
        raise ValueError("charpoly of non-square matrix")
    n = M.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = RatMatrix.zeros(n, n)
    I = RatMatrix.identity(n)
    for k in range(1, n + 1):
        Mk = M @ (Mk + I.scale(coeffs[n - k + 1]))
        coeffs[n - k] = -Mk.trace() / k
    return tuple(coeffs)


def independent(vectors: Sequence[Sequence]) -> bool:
    if not vectors:
        return True
    return rank(RatMatrix.from_rows(vectors)) == len(vectors)


def eigenspace(M: RatMatrix, nu) -> list[tuple[Fraction, ...]]:
    """Exact kernel of M - nu*I, for operators whose spectrum is known."""
    return rat_kernel(M - RatMatrix.identity(M.rows).scale(nu))

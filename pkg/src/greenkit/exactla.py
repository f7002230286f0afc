"""Exact dense linear algebra over the rationals and prime fields.

Rational matrices are stored as an integer numerator array plus one common
positive denominator, kept in lowest terms.  Numerators live in ``int64``
whenever every entry fits and silently move to Python integers (``object``
arrays) otherwise, so no operation can overflow.  Integer products are routed
through float64 BLAS only when a bound proves every partial sum is an integer
below 2**53, which keeps them exact.

Elimination over Q is fraction-free: rows are combined as ``pv*row - a*pivot_row``
and divided by their content after each step.  Over F_p it is plain
Gauss-Jordan with normalized pivots.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

_I64 = 2**62
_F53 = 2**53


@dataclass(frozen=True)
class Field:
    """Either Q (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise InputError(f"{self.p} is not a prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def tag(self) -> str:
        return "q" if self.p is None else f"fp:{self.p}"

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip().lower()
        if t in ("q", "qq", "rational"):
            return QQ
        if t.startswith("fp:"):
            try:
                return cls(int(t[3:]))
            except ValueError:
                raise InputError(f"bad field spec {text!r}") from None
        raise InputError(f"bad field spec {text!r}; use 'q' or 'fp:<p>'")

    def scalar(self, x) -> Fraction | int:
        """Coerce ``x`` (int, Fraction or "p/q" string) into this field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return Fraction(x)
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise InputError(f"{x} has no image in F{self.p}")
        return (x.numerator * pow(x.denominator, -1, self.p)) % self.p

    def characteristic(self) -> int:
        return 0 if self.p is None else self.p


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


# -- integer array helpers ---------------------------------------------------

def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(np.abs(a).max())


def _shrink(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and (a.size == 0 or _maxabs(a) < _I64):
        return a.astype(np.int64)
    return a


def _as_int_array(a) -> np.ndarray:
    arr = np.asarray(a)
    if arr.dtype == object:
        return _shrink(arr)
    if arr.dtype.kind in "iu":
        return arr.astype(np.int64)
    raise InputError("integer array expected")


def _imul(a: np.ndarray, k: int) -> np.ndarray:
    if k == 1:
        return a
    if a.dtype != object and _maxabs(a) * abs(k) < _I64:
        return a * np.int64(k)
    return _shrink(a.astype(object) * k)


def _iadd(a: np.ndarray, b: np.ndarray, sign: int = 1) -> np.ndarray:
    if a.dtype != object and b.dtype != object and _maxabs(a) + _maxabs(b) < _I64:
        return a + b if sign > 0 else a - b
    a, b = a.astype(object), b.astype(object)
    return _shrink(a + b if sign > 0 else a - b)


def _imatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    inner = a.shape[1]
    if a.size == 0 or b.size == 0 or inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    bound = _maxabs(a) * _maxabs(b) * inner
    if bound < _F53:
        return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    if bound < _I64 and a.dtype != object and b.dtype != object:
        return a @ b
    return _shrink(a.astype(object) @ b.astype(object))


def _content(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(np.gcd.reduce(a.ravel()))


# -- matrices ----------------------------------------------------------------

class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "num", "den")

    def __init__(self, num, den: int = 1, field: Field = QQ):
        num = _as_int_array(num)
        if num.ndim != 2:
            raise InputError("matrix numerator must be two-dimensional")
        den = int(den)
        if den == 0:
            raise InputError("zero denominator")
        if field.p is not None:
            if den != 1:
                num = _imul(num, pow(den % field.p, -1, field.p))
            num = _shrink(num.astype(object) % field.p) if num.dtype == object else num % field.p
            den = 1
        else:
            if den < 0:
                num, den = _imul(num, -1), -den
            if den != 1:
                g = math.gcd(_content(num), den)
                if g > 1:
                    num, den = num // g, den // g
        num.flags.writeable = False
        self.field = field
        self.num = num
        self.den = den

    # constructors
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(0, 0, field)
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise InputError("ragged matrix rows")
        if ncols == 0:
            return cls.zeros(len(rows), 0, field)
        if field.p is not None:
            return cls(np.array([[field.scalar(x) for x in r] for r in rows], dtype=object), 1, field)
        fr = [[Fraction(x) if not isinstance(x, str) else Fraction(x) for x in r] for r in rows]
        den = 1
        for r in fr:
            for x in r:
                den = den * x.denominator // math.gcd(den, x.denominator)
        arr = np.array([[x.numerator * (den // x.denominator) for x in r] for r in fr], dtype=object)
        if ncols == 0:
            arr = np.zeros((len(rows), 0), dtype=np.int64)
        return cls(arr, den, field)

    @classmethod
    def zeros(cls, r: int, c: int, field: Field = QQ) -> "Matrix":
        return cls(np.zeros((r, c), dtype=np.int64), 1, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls(np.eye(n, dtype=np.int64), 1, field)

    @classmethod
    def scalar_matrix(cls, x, field: Field = QQ) -> "Matrix":
        return cls.from_rows([[x]], field)

    @classmethod
    def permutation(cls, images: Sequence[int], field: Field = QQ) -> "Matrix":
        """Matrix sending basis vector ``j`` to basis vector ``images[j]``."""
        n = len(images)
        arr = np.zeros((n, n), dtype=np.int64)
        arr[list(images), list(range(n))] = 1
        return cls(arr, 1, field)

    # basic protocol
    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape

    @property
    def rows(self) -> int:
        return self.num.shape[0]

    @property
    def cols(self) -> int:
        return self.num.shape[1]

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over {self.field}, {self.to_strings()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.den == other.den and np.array_equal(self.num, other.num))

    __hash__ = None

    def entry(self, i: int, j: int) -> Fraction | int:
        v = int(self.num[i, j])
        return v if self.field.p is not None else Fraction(v, self.den)

    def to_strings(self) -> list[list[str]]:
        out = []
        for row in self.num.tolist():
            if self.field.p is not None or self.den == 1:
                out.append([str(int(v)) for v in row])
            else:
                out.append([str(Fraction(int(v), self.den)) for v in row])
        return out

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise InputError(f"field mismatch: {self.field} vs {other.field}")

    def _common(self, other: "Matrix") -> tuple[np.ndarray, np.ndarray, int]:
        if self.den == other.den:
            return self.num, other.num, self.den
        l = self.den * other.den // math.gcd(self.den, other.den)
        return _imul(self.num, l // self.den), _imul(other.num, l // other.den), l

    # arithmetic
    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} + {other.shape}")
        a, b, d = self._common(other)
        return Matrix(_iadd(a, b), d, self.field)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} - {other.shape}")
        a, b, d = self._common(other)
        return Matrix(_iadd(a, b, -1), d, self.field)

    def __neg__(self) -> "Matrix":
        return Matrix(_imul(self.num, -1), self.den, self.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        prod = _imatmul(self.num, other.num)
        if self.field.p is not None:
            return Matrix(prod, 1, self.field)
        return Matrix(prod, self.den * other.den, self.field)

    def scale(self, x) -> "Matrix":
        x = self.field.scalar(x)
        if self.field.p is not None:
            return Matrix(_imul(self.num, int(x)), 1, self.field)
        return Matrix(_imul(self.num, x.numerator), self.den * x.denominator, self.field)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.num.T.copy(), self.den, self.field)

    def kron(self, other: "Matrix") -> "Matrix":
        self._check(other)
        a, b = self.num, other.num
        if a.dtype == object or b.dtype == object or _maxabs(a) * _maxabs(b) >= _I64:
            k = _shrink(np.kron(a.astype(object), b.astype(object)))
        else:
            k = np.kron(a, b)
        return Matrix(k, self.den * other.den, self.field)

    def __getitem__(self, key) -> "Matrix":
        sub = self.num[key]
        if sub.ndim != 2:
            raise InputError("use .entry(i, j) for scalar access")
        return Matrix(sub.copy(), self.den, self.field)

    def take_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.num[list(idx), :], self.den, self.field)

    def take_cols(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.num[:, list(idx)], self.den, self.field)

    def reshape(self, r: int, c: int) -> "Matrix":
        return Matrix(self.num.reshape(r, c).copy(), self.den, self.field)

    def is_zero(self) -> bool:
        return not np.any(self.num)

    def is_identity(self) -> bool:
        return (self.rows == self.cols and self.den == 1
                and np.array_equal(self.num, np.eye(self.rows, dtype=np.int64)))

    def is_integral(self) -> bool:
        return self.den == 1

    def to_field(self, field: Field) -> "Matrix":
        """Reduce a rational matrix into ``field`` (identity if equal)."""
        if field == self.field:
            return self
        if self.field.p is not None:
            raise InputError("can only change field from Q")
        return Matrix(self.num, self.den, field)

    # elimination-based operations
    def rank(self) -> int:
        return len(_rref(self)[1])

    def kernel(self) -> "Matrix":
        """Columns form the echelon basis of the null space (free coordinate 1)."""
        return _kernel(self)

    def image(self) -> "Matrix":
        """Columns of ``self`` at the pivot positions: a basis of the column space."""
        _, piv, _ = _rref(self)
        return self.take_cols(piv)

    def solve(self, b: "Matrix") -> "Matrix | None":
        """Some X with ``self @ X == b``, or ``None`` if inconsistent."""
        return _solve(self, b)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise InputError("inverse of a non-square matrix")
        x = self.solve(Matrix.identity(self.rows, self.field))
        if x is None or self.rank() != self.rows:
            raise InputError("matrix is singular")
        return x

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def det(self):
        if self.rows != self.cols:
            raise InputError("determinant of a non-square matrix")
        n = self.rows
        if self.field.p is None:
            a = [[Fraction(int(v), self.den) for v in row] for row in self.num.tolist()]
            zero, one = Fraction(0), Fraction(1)
        else:
            p = self.field.p
            a = [[int(v) for v in row] for row in self.num.tolist()]
            zero, one = 0, 1
        det = one
        for c in range(n):
            k = next((r for r in range(c, n) if a[r][c] != 0), None)
            if k is None:
                return zero
            if k != c:
                a[c], a[k] = a[k], a[c]
                det = -det
            pv = a[c][c]
            det = det * pv
            if self.field.p is None:
                for r in range(c + 1, n):
                    f = a[r][c] / pv
                    if f:
                        a[r] = [x - f * y for x, y in zip(a[r], a[c])]
            else:
                inv = pow(pv, -1, p)
                for r in range(c + 1, n):
                    f = a[r][c] * inv % p
                    if f:
                        a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
                det %= p
        return det

    def trace(self):
        t = int(np.trace(self.num.astype(object)))
        return self.field.scalar(Fraction(t, self.den))


def hstack(mats: Sequence[Matrix]) -> Matrix:
    mats = list(mats)
    field = mats[0].field
    den = 1
    for m in mats:
        den = den * m.den // math.gcd(den, m.den)
    parts = [_imul(m.num, den // m.den) for m in mats]
    obj = any(p.dtype == object for p in parts)
    arr = np.hstack([p.astype(object) if obj else p for p in parts])
    return Matrix(arr, den, field)


def vstack(mats: Sequence[Matrix]) -> Matrix:
    return hstack([m.T for m in mats]).T


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    mats = list(mats)
    field = mats[0].field
    r = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    den = 1
    for m in mats:
        den = den * m.den // math.gcd(den, m.den)
    parts = [_imul(m.num, den // m.den) for m in mats]
    obj = any(p.dtype == object for p in parts)
    arr = np.zeros((r, c), dtype=object if obj else np.int64)
    i = j = 0
    for p in parts:
        arr[i:i + p.shape[0], j:j + p.shape[1]] = p
        i += p.shape[0]
        j += p.shape[1]
    return Matrix(arr, den, field)


def direct_sum(mats: Sequence[Matrix]) -> Matrix:
    return block_diag(mats)


def from_blocks(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack([hstack(row) for row in grid])


def kron_all(mats: Iterable[Matrix]) -> Matrix:
    mats = list(mats)
    out = mats[0]
    for m in mats[1:]:
        out = out.kron(m)
    return out


def flip(m: int, n: int, field: Field = QQ) -> Matrix:
    """The swap V(x)W -> W(x)V for dim V = m, dim W = n (row-major Kronecker basis)."""
    images = [b * m + a for a in range(m) for b in range(n)]
    return Matrix.permutation(images, field)


# -- elimination -------------------------------------------------------------

def _rref(mat: Matrix) -> tuple[np.ndarray, list[int], list[int]]:
    """Reduced row echelon form of the numerator.

    Returns ``(R, pivots, pivot_values)``: rows ``R[:len(pivots)]`` are the
    nonzero rows, each pivot column is zero outside its pivot row.  Over F_p the
    pivot values are 1.
    """
    if mat.field.p is not None:
        return _rref_mod(mat.num, mat.field.p)
    return _rref_q(mat.num)


def _rref_mod(num: np.ndarray, p: int):
    a = num.astype(np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        colvals = a[:, c].copy()
        colvals[r] = 0
        idx = np.flatnonzero(colvals)
        if idx.size:
            a[idx] = (a[idx] - colvals[idx, None] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots, [1] * len(pivots)


def _rref_q(num: np.ndarray):
    a = num.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        g = _content(a[r])
        if a[r, c] < 0:
            g = -g
        if g != 1:
            a[r] = a[r] // g
        pv = a[r, c]
        colvals = a[:, c].copy()
        colvals[r] = 0
        idx = np.flatnonzero(colvals)
        if idx.size:
            sub = a[idx]
            if a.dtype != object:
                bound = abs(int(pv)) * _maxabs(sub) + _maxabs(colvals) * _maxabs(a[r])
                if bound >= _I64:
                    a = a.astype(object)
                    sub = a[idx]
                    pv = a[r, c]
                    colvals = colvals.astype(object)
            sub = sub * pv - colvals[idx, None] * a[r]
            g = np.gcd.reduce(sub, axis=1)
            g[g == 0] = 1
            a[idx] = sub // g[:, None]
        pivots.append(c)
        r += 1
    pvals = [int(a[i, c]) for i, c in enumerate(pivots)]
    return _shrink(a) if a.dtype == object else a, pivots, pvals


def _kernel(mat: Matrix) -> Matrix:
    field = mat.field
    n = mat.cols
    R, piv, pv = _rref(mat)
    free = [c for c in range(n) if c not in set(piv)]
    if not free:
        return Matrix.zeros(n, 0, field)
    rank = len(piv)
    if field.p is not None:
        p = field.p
        k = np.zeros((n, len(free)), dtype=np.int64)
        if rank:
            k[piv, :] = (-R[:rank][:, free]) % p
        k[free, range(len(free))] = 1
        return Matrix(k, 1, field)
    l = 1
    for v in pv:
        l = l * v // math.gcd(l, v)
    k = np.zeros((n, len(free)), dtype=object)
    if rank:
        factors = np.array([l // v for v in pv], dtype=object)
        k[piv, :] = -R[:rank][:, free].astype(object) * factors[:, None]
    k[free, range(len(free))] = l
    return Matrix(_shrink(k), l, field)


def _solve(a: Matrix, b: Matrix) -> Matrix | None:
    a._check(b)
    if a.rows != b.rows:
        raise InputError(f"shape mismatch in solve: {a.shape} vs {b.shape}")
    field = a.field
    aug = hstack([a, b])
    R, piv, pv = _rref(aug)
    n = a.cols
    if any(c >= n for c in piv):
        return None
    m = b.cols
    rank = len(piv)
    if field.p is not None:
        x = np.zeros((n, m), dtype=np.int64)
        if rank:
            x[piv, :] = R[:rank][:, n:] % field.p
        return Matrix(x, 1, field)
    l = 1
    for v in pv:
        l = l * v // math.gcd(l, v)
    x = np.zeros((n, m), dtype=object)
    if rank:
        factors = np.array([l // v for v in pv], dtype=object)
        x[piv, :] = R[:rank][:, n:].astype(object) * factors[:, None]
    return Matrix(_shrink(x), l, field)


class CoordinateSystem:
    """Coordinates with respect to a fixed basis (columns of ``basis``).

    A square invertible block of the basis is located once, so repeated
    coordinate requests cost one product.  Every request is verified against
    the full basis; vectors outside the span raise :class:`InputError`.
    """

    def __init__(self, basis: Matrix):
        self.basis = basis
        k = basis.cols
        if k == 0:
            self._rows: list[int] = []
            self._inv = Matrix.zeros(0, 0, basis.field)
            return
        _, rows, _ = _rref(basis.T)
        if len(rows) != k:
            raise InputError("basis columns are linearly dependent")
        self._rows = rows
        self._inv = basis.take_rows(rows).inverse()

    @property
    def dim(self) -> int:
        return self.basis.cols

    def coords(self, vectors: Matrix) -> Matrix:
        if self.dim == 0:
            if not vectors.is_zero():
                raise InputError("vector is not in the span of the basis")
            return Matrix.zeros(0, vectors.cols, vectors.field)
        c = self._inv @ vectors.take_rows(self._rows)
        if self.basis @ c != vectors:
            raise InputError("vector is not in the span of the basis")
        return c

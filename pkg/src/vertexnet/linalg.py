"""Exact rational matrices.

Scalars are :class:`fractions.Fraction`.  Matrices are immutable, row-major,
and every public index is 1-based so that subset notation such as ``[n]``
or ``{i + n : i in I}`` can be passed through unchanged.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Sequence

Rational = Fraction


class DimensionError(ValueError):
    pass


class BoundsError(IndexError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class RatMatrix:
    """Dense immutable matrix of Fractions."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged rows")
            if ncols is not None and ncols != width:
                raise DimensionError(f"expected {ncols} columns, got {width}")
        else:
            width = ncols or 0
        _set = object.__setattr__
        _set(self, "_rows", data)
        _set(self, "nrows", len(data))
        _set(self, "ncols", width)

    @classmethod
    def _trusted(cls, rows: tuple, ncols: int) -> "RatMatrix":
        m = object.__new__(cls)
        _set = object.__setattr__
        _set(m, "_rows", rows)
        _set(m, "nrows", len(rows))
        _set(m, "ncols", ncols)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    # construction

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "RatMatrix":
        ncols = nrows if ncols is None else ncols
        z = Fraction(0)
        return cls._trusted(tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        one, z = Fraction(1), Fraction(0)
        return cls._trusted(
            tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        vals = [as_rational(v) for v in values]
        n = len(vals)
        z = Fraction(0)
        return cls._trusted(
            tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_function(cls, nrows: int, ncols: int, fn) -> "RatMatrix":
        """Build from ``fn(i, j)`` with 1-based ``i`` and ``j``."""
        return cls(
            [[fn(i, j) for j in range(1, ncols + 1)] for i in range(1, nrows + 1)],
            ncols=ncols,
        )

    @classmethod
    def row_vector(cls, values: Sequence) -> "RatMatrix":
        return cls([list(values)])

    @classmethod
    def column_vector(cls, values: Sequence) -> "RatMatrix":
        return cls([[v] for v in values], ncols=1)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def entry(self, i: int, j: int) -> Fraction:
        """Entry at 1-based position (i, j)."""
        self._check_index(i, self.nrows, "row")
        self._check_index(j, self.ncols, "column")
        return self._rows[i - 1][j - 1]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.entry(i, j)

    def row(self, i: int) -> "RatMatrix":
        self._check_index(i, self.nrows, "row")
        return RatMatrix._trusted((self._rows[i - 1],), self.ncols)

    def submatrix(self, row_set: Sequence[int], col_set: Sequence[int]) -> "RatMatrix":
        """Rows and columns picked in the given order (1-based)."""
        for i in row_set:
            self._check_index(i, self.nrows, "row")
        for j in col_set:
            self._check_index(j, self.ncols, "column")
        return RatMatrix._trusted(
            tuple(tuple(self._rows[i - 1][j - 1] for j in col_set) for i in row_set),
            len(col_set),
        )

    @staticmethod
    def _check_index(k: int, size: int, what: str) -> None:
        if not 1 <= k <= size:
            raise BoundsError(f"{what} index {k} outside 1..{size}")

    # algebra

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def transpose(self) -> "RatMatrix":
        return RatMatrix._trusted(tuple(zip(*self._rows)) if self.nrows else (), self.nrows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def _same_shape(self, other: "RatMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix._trusted(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix._trusted(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix._trusted(tuple(tuple(-a for a in r) for r in self._rows), self.ncols)

    def scale(self, c) -> "RatMatrix":
        c = as_rational(c)
        return RatMatrix._trusted(tuple(tuple(c * a for a in r) for r in self._rows), self.ncols)

    def __rmul__(self, c) -> "RatMatrix":
        return self.scale(c)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = tuple(zip(*other._rows)) if other.nrows else ((),) * other.ncols
        out = []
        for r in self._rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(sum((a * col[k] for k, a in nz), Fraction(0)) for col in cols))
        return RatMatrix._trusted(tuple(out), other.ncols)

    def is_zero(self) -> bool:
        return not any(a for r in self._rows for a in r)

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def is_skew_symmetric(self) -> bool:
        return self == -self.transpose()

    # linear algebra

    def det(self) -> Fraction:
        return det(self)

    def rank(self) -> int:
        return rank(self)

    def minor(self, row_set: Sequence[int], col_set: Sequence[int]) -> Fraction:
        return minor(self, row_set, col_set)

    # serialization

    def to_json(self) -> list[list[str]]:
        return [[format_rational(a) for a in r] for r in self._rows]

    @classmethod
    def from_json(cls, data) -> "RatMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        return cls([[parse_rational(str(a)) for a in r] for r in data])

    def __repr__(self) -> str:
        return f"RatMatrix({self.to_json()})"


def hstack(*blocks: RatMatrix) -> RatMatrix:
    if len({b.nrows for b in blocks}) > 1:
        raise DimensionError("hstack needs equal row counts")
    rows = tuple(sum((b.rows()[i] for b in blocks), ()) for i in range(blocks[0].nrows))
    return RatMatrix._trusted(rows, sum(b.ncols for b in blocks))


def vstack(*blocks: RatMatrix) -> RatMatrix:
    if len({b.ncols for b in blocks}) > 1:
        raise DimensionError("vstack needs equal column counts")
    return RatMatrix._trusted(sum((b.rows() for b in blocks), ()), blocks[0].ncols)


def block(grid: Sequence[Sequence[RatMatrix]]) -> RatMatrix:
    return vstack(*(hstack(*row) for row in grid))


def _integer_rows(rows) -> list[list[int]]:
    # Row scaling by a positive integer: det picks up the product, rank is unchanged.
    out = []
    for r in rows:
        d = lcm(*(a.denominator for a in r)) if r else 1
        out.append([a.numerator * (d // a.denominator) for a in r])
    return out


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place.

    Returns ``(rank, sign)`` where, for a square full-rank input, the last
    pivot times ``sign`` is the determinant.
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((k for k in range(r, nrows) if a[k][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        pr = a[r]
        for k in range(r + 1, nrows):
            rk = a[k]
            f = rk[c]
            for j in range(c + 1, ncols):
                rk[j] = (piv * rk[j] - f * pr[j]) // prev
            rk[c] = 0
        prev = piv
        r += 1
    return r, sign


def det(m: RatMatrix) -> Fraction:
    if not m.is_square:
        raise DimensionError(f"determinant of non-square {m.shape} matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    rows = m.rows()
    scale = 1
    for r in rows:
        scale *= lcm(*(a.denominator for a in r))
    a = _integer_rows(rows)
    r, sign = _bareiss(a)
    if r < n:
        return Fraction(0)
    return Fraction(sign * a[n - 1][n - 1], scale)


def minor(m: RatMatrix, row_set: Sequence[int], col_set: Sequence[int]) -> Fraction:
    """Determinant on rows ``row_set`` and columns ``col_set`` (1-based, sorted)."""
    rs = sorted(row_set)
    cs = sorted(col_set)
    if len(rs) != len(cs):
        raise DimensionError(f"|I| = {len(rs)} but |J| = {len(cs)}")
    if len(set(rs)) != len(rs) or len(set(cs)) != len(cs):
        raise DimensionError("repeated index in a minor")
    if not rs:
        return Fraction(1)
    return det(m.submatrix(rs, cs))


def rank(m: RatMatrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    r, _ = _bareiss(_integer_rows(m.rows()))
    return r


def rref(m: RatMatrix) -> tuple[RatMatrix, tuple[int, ...]]:
    """Reduced row echelon form and the (1-based) pivot columns."""
    a = [list(r) for r in m.rows()]
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((k for k in range(r, nrows) if a[k][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        pr = a[r]
        for k in range(nrows):
            if k != r and a[k][c]:
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], pr)]
        pivots.append(c + 1)
        r += 1
    return RatMatrix._trusted(tuple(tuple(x) for x in a), ncols), tuple(pivots)


def row_basis(m: RatMatrix) -> RatMatrix:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    red, piv = rref(m)
    return RatMatrix._trusted(red.rows()[: len(piv)], m.ncols)


def solve(m: RatMatrix, rhs: RatMatrix) -> RatMatrix:
    """Exact ``X`` with ``m @ X == rhs`` for square invertible ``m``."""
    if not m.is_square:
        raise DimensionError(f"solve needs a square matrix, got {m.shape}")
    if rhs.nrows != m.nrows:
        raise DimensionError(f"rhs has {rhs.nrows} rows, matrix has {m.nrows}")
    n = m.nrows
    k = rhs.ncols
    a = [list(r) + list(s) for r, s in zip(m.rows(), rhs.rows())]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            raise SingularMatrixError(f"vanishing pivot in column {c + 1}")
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        pr = a[c]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], pr)]
    return RatMatrix._trusted(tuple(tuple(r[n:]) for r in a), k)


def solve_left(m: RatMatrix, rhs: RatMatrix) -> RatMatrix | None:
    """Some ``X`` with ``X @ m == rhs``, or ``None`` if no solution exists.

    ``m`` need not be square or invertible.
    """
    if rhs.ncols != m.ncols:
        raise DimensionError(f"rhs has {rhs.ncols} columns, matrix has {m.ncols}")
    # X m = R  <=>  m^T X^T = R^T ; eliminate on [m^T | R^T].
    aug = hstack(m.transpose(), rhs.transpose())
    red, piv = rref(aug)
    nvar = m.nrows
    if any(p > nvar for p in piv):
        return None
    sol = [[Fraction(0)] * rhs.nrows for _ in range(nvar)]
    for r, p in enumerate(piv):
        sol[p - 1] = list(red.rows()[r][nvar:])
    return RatMatrix(sol, ncols=rhs.nrows).transpose()


def inverse(m: RatMatrix) -> RatMatrix:
    return solve(m, RatMatrix.identity(m.nrows))


def schur_complement(m: RatMatrix, block_size: int) -> RatMatrix:
    """``A - B C^{-1} B^T`` for ``m = [[A, B], [B^T, C]]`` with ``A`` of size ``block_size``."""
    if not m.is_square:
        raise DimensionError(f"Schur complement of non-square {m.shape} matrix")
    n = m.nrows
    if not 0 <= block_size <= n:
        raise DimensionError(f"block size {block_size} outside 0..{n}")
    if block_size == n:
        return m
    head = list(range(1, block_size + 1))
    tail = list(range(block_size + 1, n + 1))
    a = m.submatrix(head, head)
    b = m.submatrix(head, tail)
    c = m.submatrix(tail, tail)
    bt = m.submatrix(tail, head)
    return a - b @ solve(c, bt)


# subsets


def next_combination(combo: Sequence[int], n: int) -> tuple[int, ...] | None:
    """Lexicographic successor of a sorted k-subset of ``1..n``; ``None`` at the end."""
    c = list(combo)
    k = len(c)
    i = k - 1
    while i >= 0 and c[i] == n - k + i + 1:
        i -= 1
    if i < 0:
        return None
    c[i] += 1
    for j in range(i + 1, k):
        c[j] = c[j - 1] + 1
    return tuple(c)


def combinations_from(n: int, k: int, start: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    """k-subsets of ``1..n`` in lexicographic order, beginning at ``start``."""
    if k > n or k < 0:
        return
    cur: tuple[int, ...] | None = tuple(start) if start is not None else tuple(range(1, k + 1))
    if len(cur) != k or list(cur) != sorted(set(cur)) or (k and not (1 <= cur[0] and cur[-1] <= n)):
        raise ValueError(f"{start!r} is not a sorted {k}-subset of 1..{n}")
    while cur is not None:
        yield cur
        cur = next_combination(cur, n)


def iter_maximal_minors(
    m: RatMatrix, start: Sequence[int] | None = None
) -> Iterator[tuple[tuple[int, ...], Fraction]]:
    """Maximal minors in lexicographic column-set order, restartable at ``start``."""
    if m.nrows > m.ncols:
        raise DimensionError(f"{m.nrows} rows exceed {m.ncols} columns")
    rows = list(range(1, m.nrows + 1))
    for cols in combinations_from(m.ncols, m.nrows, start):
        yield cols, det(m.submatrix(rows, cols))


def maximal_minors(m: RatMatrix) -> list[tuple[tuple[int, ...], Fraction]]:
    return list(iter_maximal_minors(m))

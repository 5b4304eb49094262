"""Row spaces as Grassmannian points: equality, Plücker vectors, isotropy and
total nonnegativity, plus the psi embedding of a square matrix."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .linalg import (
    DimensionError,
    RatMatrix,
    combinations_from,
    format_rational,
    hstack,
    iter_maximal_minors,
    minor,
    rank,
    row_basis,
    vstack,
)
from .vertex import d_matrix, omega0

PSI_MAX_N = 6


class DegeneratePointError(ValueError):
    pass


class SizeGuardError(ValueError):
    pass


@dataclass
class CheckResult:
    """Outcome of an exhaustive check; truthy iff it passed."""

    ok: bool
    checked: int = 0
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class GrassmannPoint:
    representative: RatMatrix
    ambient_dim: int = field(init=False)
    subspace_dim: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "ambient_dim", self.representative.ncols)
        object.__setattr__(self, "subspace_dim", rank(self.representative))

    def basis(self) -> RatMatrix:
        """The representative if it has full row rank, otherwise its RREF rows."""
        if self.subspace_dim == self.representative.nrows:
            return self.representative
        return row_basis(self.representative)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrassmannPoint):
            return NotImplemented
        return row_space_equal(self.representative, other.representative)

    __hash__ = None


@dataclass(frozen=True)
class BilinearForm:
    matrix: RatMatrix

    def __post_init__(self):
        if not self.matrix.is_square:
            raise DimensionError(f"form matrix must be square, got {self.matrix.shape}")
        if not self.matrix.is_skew_symmetric():
            raise ValueError("form matrix is not skew-symmetric")

    @property
    def dim(self) -> int:
        return self.matrix.nrows


def row_space_equal(a: RatMatrix, b: RatMatrix) -> bool:
    if a.ncols != b.ncols:
        raise DimensionError(f"column counts differ: {a.ncols} vs {b.ncols}")
    ra = rank(a)
    return ra == rank(b) == rank(vstack(a, b))


def plucker(point: GrassmannPoint | RatMatrix) -> list[tuple[tuple[int, ...], Fraction]]:
    """Maximal minors of a full-rank representative, lexicographic in the column set."""
    if isinstance(point, RatMatrix):
        point = GrassmannPoint(point)
    if point.subspace_dim == 0:
        raise DegeneratePointError("the zero subspace has no Plücker vector")
    return list(iter_maximal_minors(point.basis()))


def iter_plucker(point: GrassmannPoint, start: Sequence[int] | None = None) -> Iterator[tuple[tuple[int, ...], Fraction]]:
    if point.subspace_dim == 0:
        raise DegeneratePointError("the zero subspace has no Plücker vector")
    return iter_maximal_minors(point.basis(), start)


def normalize_plucker(coords: Sequence[tuple[tuple[int, ...], Fraction]]) -> list[tuple[tuple[int, ...], Fraction]]:
    """Flip the global sign so the first nonzero coordinate is positive."""
    first = next((v for _, v in coords if v), None)
    if first is None or first > 0:
        return list(coords)
    return [(c, -v) for c, v in coords]


def plucker_proportional(p: Sequence[tuple[tuple[int, ...], Fraction]], q: Sequence[tuple[tuple[int, ...], Fraction]]) -> bool:
    if [c for c, _ in p] != [c for c, _ in q]:
        return False
    ratio = None
    for (_, a), (_, b) in zip(p, q):
        if (a == 0) != (b == 0):
            return False
        if a:
            if ratio is None:
                ratio = b / a
            elif b != ratio * a:
                return False
    return ratio is not None


def plucker_to_json(coords: Sequence[tuple[tuple[int, ...], Fraction]]) -> list[dict]:
    return [{"cols": list(c), "value": format_rational(v)} for c, v in coords]


def is_isotropic(point: GrassmannPoint | RatMatrix, form: BilinearForm | RatMatrix) -> bool:
    rep = point.representative if isinstance(point, GrassmannPoint) else point
    mat = form.matrix if isinstance(form, BilinearForm) else form
    if rep.ncols != mat.nrows:
        raise DimensionError(f"subspace lives in dimension {rep.ncols}, form in {mat.nrows}")
    return (rep @ mat @ rep.transpose()).is_zero()


def is_lagrangian(point: GrassmannPoint | RatMatrix, form: BilinearForm | RatMatrix) -> bool:
    """Isotropic for a nondegenerate form, of half the ambient dimension."""
    if isinstance(point, RatMatrix):
        point = GrassmannPoint(point)
    mat = form.matrix if isinstance(form, BilinearForm) else form
    if rank(mat) != mat.nrows:
        return False
    return 2 * point.subspace_dim == mat.nrows and is_isotropic(point, mat)


def iter_minors(m: RatMatrix) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], Fraction]]:
    """All minors, by size, then row set, then column set (lexicographic)."""
    for k in range(1, min(m.shape) + 1):
        for rows in combinations_from(m.nrows, k):
            sub = m.submatrix(rows, range(1, m.ncols + 1))
            for cols in combinations_from(m.ncols, k):
                yield rows, cols, minor(sub, range(1, k + 1), cols)


def is_tnn_matrix(m: RatMatrix) -> CheckResult:
    checked = 0
    for rows, cols, value in iter_minors(m):
        checked += 1
        if value < 0:
            return CheckResult(False, checked, {"rows": list(rows), "cols": list(cols), "value": format_rational(value)})
    return CheckResult(True, checked)


def is_tnn_point(point: GrassmannPoint | RatMatrix) -> CheckResult:
    """All Plücker coordinates share one sign (zeros allowed)."""
    if isinstance(point, RatMatrix):
        point = GrassmannPoint(point)
    sign = 0
    checked = 0
    first_cols = None
    for cols, value in iter_plucker(point):
        checked += 1
        if not value:
            continue
        s = 1 if value > 0 else -1
        if sign == 0:
            sign, first_cols = s, cols
        elif s != sign:
            return CheckResult(
                False,
                checked,
                {"cols": list(cols), "value": format_rational(value), "opposite_sign_at": list(first_cols)},
            )
    if sign == 0:
        raise DegeneratePointError("all Plücker coordinates vanish")
    return CheckResult(True, checked)


def psi(a: RatMatrix) -> RatMatrix:
    """``(Id_n, omega0 D_n A)``."""
    if not a.is_square:
        raise DimensionError(f"psi needs a square matrix, got {a.shape}")
    n = a.nrows
    return hstack(RatMatrix.identity(n), omega0(n) @ d_matrix(n) @ a)


def inv_subset(subset: Sequence[int], n: int) -> tuple[int, ...]:
    """``{n - i + 1 : i in subset}`` in increasing order."""
    return tuple(sorted(n - i + 1 for i in subset))


def shifted_subset(subset: Sequence[int], n: int) -> tuple[int, ...]:
    return tuple(i + n for i in subset)


def psi_minor_identity_check(a: RatMatrix) -> CheckResult:
    """Every maximal minor on columns ``([n] \\ I) ∪ (J + n)`` of psi(A) should
    equal the minor of A on rows ``Inv(I)`` and columns ``J``."""
    if not a.is_square:
        raise DimensionError(f"need a square matrix, got {a.shape}")
    n = a.nrows
    if n > PSI_MAX_N:
        raise SizeGuardError(f"minor identity brute force capped at n = {PSI_MAX_N}, got {n}")
    p = psi(a)
    all_rows = list(range(1, n + 1))
    checked = 0
    for k in range(n + 1):
        for i_set in combinations_from(n, k):
            left = [c for c in all_rows if c not in i_set]
            inv = inv_subset(i_set, n)
            for j_set in combinations_from(n, k):
                lhs = minor(p, all_rows, left + list(shifted_subset(j_set, n)))
                rhs = minor(a, inv, j_set)
                checked += 1
                if lhs != rhs:
                    return CheckResult(
                        False,
                        checked,
                        {
                            "I": list(i_set),
                            "J": list(j_set),
                            "psi_minor": format_rational(lhs),
                            "a_minor": format_rational(rhs),
                        },
                    )
    return CheckResult(True, checked)

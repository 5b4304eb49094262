"""Restriction of the boundary matrix to mu-perp, the chi/u generators and
the odd-n embedding into the nonnegative Grassmannian.

Operators act on row vectors from the right (``f^T m``), so a restricted
operator ``C`` satisfies ``C F = F m`` for the basis rows ``F``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .grassmann import CheckResult, GrassmannPoint, is_isotropic, is_lagrangian, psi
from .linalg import BoundsError, RatMatrix, block, inverse, rank, solve_left
from .network import Pair
from .vertex import (
    GeneratorProductSpec,
    d_matrix,
    delta_matrix,
    eta_form,
    f_basis,
    g_form,
    modified_boundary_matrix,
    mu_vector,
    omega0,
    w0,
    w_vector,
    xi_vector,
)


class InvarianceError(ValueError):
    pass


class ParityError(ValueError):
    pass


@dataclass(frozen=True)
class RestrictedOperator:
    n: int
    matrix: RatMatrix

    def lift(self) -> RatMatrix:
        """``C F``: the restricted action written back in the ambient basis."""
        return self.matrix @ f_basis(self.n)


def restrict_left_action(m: RatMatrix) -> RestrictedOperator:
    if not m.is_square:
        raise ValueError(f"need a square matrix, got {m.shape}")
    n = m.nrows
    f = f_basis(n)
    image = f @ m
    mu = RatMatrix.column_vector(mu_vector(n))
    if not (image @ mu).is_zero():
        raise InvarianceError("the operator does not preserve mu-perp")
    c = solve_left(f, image)
    if c is None:
        raise InvarianceError("image is not expressible in the f-basis")
    return RestrictedOperator(n, c)


def _bump(size: int, entries: list[tuple[int, int, Fraction]]) -> RatMatrix:
    rows = RatMatrix.identity(size).tolist()
    for a, b, v in entries:
        if 1 <= a <= size and 1 <= b <= size:
            rows[a - 1][b - 1] += v
    return RatMatrix(rows)


def chi_generator(n: int, i: int, t) -> RatMatrix:
    """``1 + t (E_{i+1,i} - E_{i-1,i})`` on the (n-1)-dimensional space."""
    if not 1 <= i <= n - 1:
        raise BoundsError(f"generator index {i} outside 1..{n - 1}")
    t = Fraction(t)
    return _bump(n - 1, [(i + 1, i, t), (i - 1, i, -t)])


def u_generator(size: int, i: int, t, displayed: bool = False) -> RatMatrix:
    """``1 + t (E_{i-1,i} + E_{i+1,i})``; out-of-range terms are dropped.

    The bump sits in column ``i`` so that ``Delta chi_i(t) Delta = u_i((-1)^i t)``
    holds exactly.  ``displayed=True`` gives the row-``i`` variant
    ``1 + t (E_{i,i-1} + E_{i,i+1})``, which is the transpose.
    """
    if not 1 <= i <= size:
        raise BoundsError(f"generator index {i} outside 1..{size}")
    t = Fraction(t)
    if displayed:
        return _bump(size, [(i, i - 1, t), (i, i + 1, t)])
    return _bump(size, [(i - 1, i, t), (i + 1, i, t)])


def delta_conjugate(m: RatMatrix) -> RatMatrix:
    d = delta_matrix(m.nrows)
    return d @ m @ d


def reduced_boundary_matrix(spec: GeneratorProductSpec, r: Mapping[Pair, Fraction]) -> RatMatrix:
    """``Delta (M_check restricted to mu-perp) Delta``."""
    restricted = restrict_left_action(modified_boundary_matrix(spec, r))
    return delta_conjugate(restricted.matrix)


def u_argument(pair: Pair, r: Fraction) -> Fraction:
    i, j = pair
    return Fraction(r) if (i + j) % 2 == 0 else 1 / Fraction(r)


def u_product(spec: GeneratorProductSpec, r: Mapping[Pair, Fraction]) -> RatMatrix:
    """Product of ``u_{j-i}(r_ij^((-1)^(i+j)))`` in the order of ``spec``."""
    size = spec.n - 1
    m = RatMatrix.identity(size)
    for pair in spec.ordering:
        i, j = pair
        m = m @ u_generator(size, j - i, u_argument(pair, r[pair]))
    return m


# -- odd-n embedding -----------------------------------------------------------


def basis_change(size: int, displayed: bool = False) -> RatMatrix:
    """``[[0, Id], [X, 0]]`` with ``X = (omega0 D)^{-1} = D omega0``.

    ``displayed=True`` uses ``X = omega0 D`` instead, which only agrees with
    the inverse when ``size`` is odd.
    """
    od = omega0(size) @ d_matrix(size)
    x = od if displayed else d_matrix(size) @ omega0(size)
    z = RatMatrix.zeros(size)
    return block([[z, RatMatrix.identity(size)], [x, z]])


def transformed_representative(m: RatMatrix, displayed: bool = False) -> RatMatrix:
    """``omega0 D (m, Id) B`` for the basis change ``B``."""
    size = m.nrows
    left = omega0(size) @ d_matrix(size)
    return left @ block([[m, RatMatrix.identity(size)]]) @ basis_change(size, displayed)


def nonneg_identity_holds(m: RatMatrix, displayed: bool = False) -> bool:
    return transformed_representative(m, displayed) == psi(m)


def embed_odd(spec: GeneratorProductSpec, r: Mapping[Pair, Fraction]) -> GrassmannPoint:
    """The point of Gr(n-1, 2n-2) represented by ``psi(reduced boundary matrix)``."""
    if spec.n % 2 == 0:
        raise ParityError(f"the embedding is only established for odd n, got n = {spec.n}")
    m = reduced_boundary_matrix(spec, r)
    if not nonneg_identity_holds(m):
        raise AssertionError("basis change did not produce psi(M); arithmetic is broken")
    return GrassmannPoint(psi(m))


def restricted_form(n: int) -> RatMatrix:
    """``Delta (F g F^T) Delta``: the form on mu-perp preserved by the reduced matrix."""
    f = f_basis(n)
    return delta_conjugate(f @ g_form(n) @ f.transpose())


def basis_change_preserves_isotropy(m: RatMatrix, n: int) -> bool:
    """Isotropy of ``(m, Id)`` for ``diag(h, -h)`` survives the right basis change."""
    h = restricted_form(n)
    z = RatMatrix.zeros(h.nrows)
    form = block([[h, z], [z, -h]])
    rep = block([[m, RatMatrix.identity(m.nrows)]])
    b = basis_change(m.nrows)
    b_inv = inverse(b)
    moved_form = b_inv @ form @ b_inv.transpose()
    return is_isotropic(rep, form) and is_isotropic(rep @ b, moved_form)


# -- the quotient w-perp / <xi> -----------------------------------------------


def xi_in_f_basis(n: int) -> list[int]:
    """Coefficients of xi on f_1..f_{2n-1}: ones on odd indices."""
    return [1 if k % 2 else 0 for k in range(1, 2 * n)]


def quotient_drop_index(n: int) -> int:
    # f_n for odd n (as in the nonnegativity argument); f_1 otherwise.
    return n if n % 2 else 1


def quotient_basis(n: int) -> RatMatrix:
    """Rows ``f_i`` (in R^2n), ``i != drop``: a basis of a complement of xi in w-perp."""
    drop = quotient_drop_index(n)
    f = f_basis(2 * n)
    keep = [k for k in range(1, 2 * n) if k != drop]
    return f.submatrix(keep, range(1, 2 * n + 1))


def reduced_eta(n: int) -> RatMatrix:
    q = quotient_basis(n)
    return q @ eta_form(2 * n) @ q.transpose()


def project_to_quotient(rows: RatMatrix, n: int) -> RatMatrix:
    """Coordinates in ``quotient_basis(n)`` of rows in w-perp, modulo xi."""
    f = f_basis(2 * n)
    coeffs = solve_left(f, rows)
    if coeffs is None:
        raise InvarianceError("rows do not lie in w-perp")
    drop = quotient_drop_index(n)
    xi = xi_in_f_basis(n)
    out = []
    for row in coeffs.rows():
        a = row[drop - 1]
        reduced = [x - a * c for x, c in zip(row, xi)]
        out.append([x for k, x in enumerate(reduced, start=1) if k != drop])
    return RatMatrix(out)


def theorem_lagr_check(spec: GeneratorProductSpec, r: Mapping[Pair, Fraction]) -> CheckResult:
    """Projection of the row space of W0 to w-perp/<xi> is Lagrangian."""
    n = spec.n
    rep = w0(spec, r)
    eta = eta_form(2 * n)
    w = RatMatrix.column_vector(w_vector(n))
    xi = RatMatrix.row_vector(xi_vector(n))
    facts = {
        "w0_isotropic": is_isotropic(rep, eta),
        "w0_in_w_perp": (rep @ w).is_zero(),
        "xi_in_w0": rank(block([[rep], [xi]])) == rank(rep),
        "xi_annihilates_w_perp": (xi @ eta @ f_basis(2 * n).transpose()).is_zero(),
    }
    if all(facts.values()):
        projected = project_to_quotient(rep, n)
        form = reduced_eta(n)
        facts["form_nondegenerate"] = rank(form) == 2 * n - 2
        facts["projected_dim"] = rank(projected) == n - 1
        facts["lagrangian"] = is_lagrangian(projected, form)
    ok = all(facts.values())
    return CheckResult(ok, len(facts), None if ok else {k: v for k, v in facts.items() if not v})

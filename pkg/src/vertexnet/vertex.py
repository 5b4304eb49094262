"""Vertex-model side: constant matrices, the generators phi and the
boundary measurement matrices built from them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .linalg import BoundsError, RatMatrix, block, hstack
from .network import ElectricalNetwork, Pair, parameter_pairs, response_matrix

# W1 left-block conventions searched by calibration.
W1_LITERAL = "S"
W1_TRANSPOSED = "S^T"
W1_BLOCKS = (W1_LITERAL, W1_TRANSPOSED)

CONSTANT_KINDS = ("Omega0", "S", "T", "G", "Eta", "Delta", "D")


def omega0(n: int) -> RatMatrix:
    """Order-reversing permutation matrix."""
    return RatMatrix.from_function(n, n, lambda i, j: 1 if i + j == n + 1 else 0)


def s_matrix(n: int) -> RatMatrix:
    """Identity minus the cyclic shift: 1 on the diagonal, -1 at (i+1, i) and (1, n)."""
    def entry(i, j):
        if i == j:
            return 1
        if i == j + 1 or (n > 1 and i == 1 and j == n):
            return -1
        return 0
    if n == 1:
        return RatMatrix([[0]])
    return RatMatrix.from_function(n, n, entry)


def t_matrix(size: int) -> RatMatrix:
    """Perfect shuffle of order ``size = 2n``: row 2k-1 picks column k, row 2k picks n+k."""
    if size % 2:
        raise ValueError(f"T needs an even size, got {size}")
    n = size // 2
    def entry(i, j):
        k = (i + 1) // 2
        return 1 if j == (k if i % 2 else n + k) else 0
    return RatMatrix.from_function(size, size, entry)


def g_form(n: int) -> RatMatrix:
    """Skew form with entries (-1)^(j-i) above the diagonal."""
    def entry(i, j):
        if i == j:
            return 0
        sign = -1 if (j - i) % 2 else 1
        return sign if i < j else -sign
    return RatMatrix.from_function(n, n, entry)


def eta_form(size: int) -> RatMatrix:
    if size % 2:
        raise ValueError(f"eta needs an even size, got {size}")
    n = size // 2
    g = g_form(n)
    z = RatMatrix.zeros(n)
    return block([[g, z], [z, g]])


def delta_signs(size: int) -> list[int]:
    """Period-four pattern 1, -1, -1, 1, 1, -1, -1, ..."""
    return [1 if k % 4 in (0, 1) else -1 for k in range(1, size + 1)]


def delta_matrix(size: int) -> RatMatrix:
    return RatMatrix.diag(delta_signs(size))


def d_matrix(n: int) -> RatMatrix:
    """Alternating Diag(1, -1, 1, ...); pinned down by the n=4 psi display."""
    return RatMatrix.diag([(-1) ** k for k in range(n)])


def constant_matrix(kind: str, size: int) -> RatMatrix:
    """Constant matrix of the given kind and (square) size.

    ``T`` and ``Eta`` take the full size ``2n``; ``Delta`` is usually wanted
    at size ``n - 1``.
    """
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    builders = {
        "Omega0": omega0,
        "S": s_matrix,
        "T": t_matrix,
        "G": g_form,
        "Eta": eta_form,
        "Delta": delta_matrix,
        "D": d_matrix,
    }
    try:
        return builders[kind](size)
    except KeyError:
        raise ValueError(f"unknown constant kind {kind!r}; expected one of {CONSTANT_KINDS}") from None


def mu_vector(n: int) -> list[int]:
    return [(-1) ** k for k in range(n)]


def zeta_vector(n: int) -> list[int]:
    return [1] * n


def xi_vector(n: int) -> list[int]:
    """All-ones vector of length 2n."""
    return [1] * (2 * n)


def w_vector(n: int) -> list[int]:
    """(1, -1, ..., 1, -1) of length 2n."""
    return [(-1) ** k for k in range(2 * n)]


# -- generators and products --------------------------------------------------


def phi_generator(n: int, i: int, s) -> RatMatrix:
    """``1 - s (E_ii + E_{i,i+1} - E_{i+1,i} - E_{i+1,i+1})`` in Mat_n."""
    if not 1 <= i <= n - 1:
        raise BoundsError(f"generator index {i} outside 1..{n - 1}")
    s = Fraction(s)
    rows = RatMatrix.identity(n).tolist()
    a, b = i - 1, i
    rows[a][a] -= s
    rows[a][b] -= s
    rows[b][a] += s
    rows[b][b] += s
    return RatMatrix(rows)


@dataclass(frozen=True)
class GeneratorProductSpec:
    """Factor order for the product over pairs ``i < j``."""

    n: int
    ordering: tuple[Pair, ...]

    def __post_init__(self):
        ordering = tuple((int(i), int(j)) for i, j in self.ordering)
        object.__setattr__(self, "ordering", ordering)
        if sorted(ordering) != parameter_pairs(self.n):
            raise ValueError(f"ordering is not a permutation of the pairs i<j for n={self.n}")

    @classmethod
    def lexicographic(cls, n: int) -> "GeneratorProductSpec":
        return cls(n, tuple(parameter_pairs(n)))

    def to_dict(self) -> dict:
        return {"n": self.n, "ordering": [list(p) for p in self.ordering]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "GeneratorProductSpec":
        return cls(int(data["n"]), tuple(tuple(p) for p in data["ordering"]))

    @classmethod
    def from_json(cls, text: str) -> "GeneratorProductSpec":
        return cls.from_dict(json.loads(text))


def default_spec(n: int) -> GeneratorProductSpec:
    # Lexicographic order is the calibrated default at n = 3, 4.
    return GeneratorProductSpec.lexicographic(n)


def factor_argument(pair: Pair, r: Fraction) -> Fraction:
    """``(-1)^(i+j) r^((-1)^(i+j))``: ``r`` for even ``i+j``, ``-1/r`` for odd."""
    i, j = pair
    if (i + j) % 2 == 0:
        return Fraction(r)
    return -1 / Fraction(r)


def modified_boundary_matrix(spec: GeneratorProductSpec, r: Mapping[Pair, Fraction]) -> RatMatrix:
    n = spec.n
    m = RatMatrix.identity(n)
    for pair in spec.ordering:
        i, j = pair
        m = m @ phi_generator(n, j - i, factor_argument(pair, r[pair]))
    return m


def boundary_matrix(spec: GeneratorProductSpec, r: Mapping[Pair, Fraction]) -> RatMatrix:
    return omega0(spec.n) @ modified_boundary_matrix(spec, r)


def w0(spec: GeneratorProductSpec, r: Mapping[Pair, Fraction]) -> RatMatrix:
    """``(M_B, Id_n)``."""
    return hstack(boundary_matrix(spec, r), RatMatrix.identity(spec.n))


def w1(net: ElectricalNetwork, left_block: str = W1_LITERAL) -> RatMatrix:
    """``(S_n, M_R)``; ``left_block="S^T"`` uses the transposed cyclic difference."""
    n = net.n_boundary
    if left_block == W1_LITERAL:
        left = s_matrix(n)
    elif left_block == W1_TRANSPOSED:
        left = s_matrix(n).transpose()
    else:
        raise ValueError(f"unknown W1 block convention {left_block!r}")
    return hstack(left, response_matrix(net))


def w2(spec: GeneratorProductSpec, r: Mapping[Pair, Fraction]) -> RatMatrix:
    """``(M_B, Id_n) S_2n T_2n``."""
    n = spec.n
    return w0(spec, r) @ s_matrix(2 * n) @ t_matrix(2 * n)


def f_basis(size: int) -> RatMatrix:
    """Rows ``f_i = e_i + e_{i+1}``, ``i = 1..size-1``."""
    return RatMatrix.from_function(size - 1, size, lambda i, j: 1 if j in (i, i + 1) else 0)


def v_tilde_basis(n: int) -> RatMatrix:
    """Spanning set of the image of w-perp under S_2n T_2n (rows ``f_i S T``)."""
    return f_basis(2 * n) @ s_matrix(2 * n) @ t_matrix(2 * n)

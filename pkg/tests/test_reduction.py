from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals, resistance_maps
from vertexnet.grassmann import is_tnn_matrix, is_tnn_point, plucker, psi
from vertexnet.linalg import BoundsError, RatMatrix, rank
from vertexnet.network import parameter_pairs
from vertexnet.reduction import (
    InvarianceError,
    ParityError,
    basis_change,
    basis_change_preserves_isotropy,
    chi_generator,
    delta_conjugate,
    embed_odd,
    nonneg_identity_holds,
    project_to_quotient,
    quotient_basis,
    reduced_boundary_matrix,
    reduced_eta,
    restrict_left_action,
    theorem_lagr_check,
    transformed_representative,
    u_generator,
    u_product,
    xi_in_f_basis,
)
from vertexnet.vertex import (
    GeneratorProductSpec,
    d_matrix,
    default_spec,
    f_basis,
    modified_boundary_matrix,
    omega0,
    phi_generator,
    xi_vector,
)


def e(size, i, j):
    return RatMatrix.from_function(size, size, lambda a, b: 1 if (a, b) == (i, j) else 0)


def unit(n):
    return {p: Fraction(1) for p in parameter_pairs(n)}


@st.composite
def specs_and_params(draw, lo=2, hi=6, odd=False):
    n = draw(st.integers(lo, hi))
    if odd and n % 2 == 0:
        n += 1
    ordering = draw(st.permutations(parameter_pairs(n)))
    return GeneratorProductSpec(n, tuple(ordering)), draw(resistance_maps(n))


class TestRestriction:
    def test_identity(self):
        assert restrict_left_action(RatMatrix.identity(5)).matrix == RatMatrix.identity(4)

    def test_first_exception(self):
        t = Fraction(7, 3)
        assert restrict_left_action(phi_generator(4, 1, t)).matrix == RatMatrix.identity(3) + e(3, 2, 1).scale(t)

    def test_interior_formula(self):
        t = Fraction(-2)
        out = restrict_left_action(phi_generator(5, 2, t)).matrix
        assert out == RatMatrix.identity(4) + (e(4, 3, 2) - e(4, 1, 2)).scale(t)

    def test_not_invariant(self):
        with pytest.raises(InvarianceError):
            restrict_left_action(RatMatrix([[1, 1], [0, 1]]))

    @given(st.integers(2, 10), st.data(), rationals(30))
    def test_chi_matches_restriction(self, n, data, t):
        i = data.draw(st.integers(1, n - 1))
        op = restrict_left_action(phi_generator(n, i, t))
        assert op.matrix == chi_generator(n, i, t)
        assert op.lift() == f_basis(n) @ phi_generator(n, i, t)

    @given(specs_and_params())
    def test_restriction_is_multiplicative(self, case):
        spec, r = case
        m = modified_boundary_matrix(spec, r)
        assert restrict_left_action(m @ m).matrix == restrict_left_action(m).matrix @ restrict_left_action(m).matrix


class TestChiAndU:
    def test_chi_examples(self):
        i4 = RatMatrix.identity(4)
        assert chi_generator(5, 2, 3) == i4 + (e(4, 3, 2) - e(4, 1, 2)).scale(3)
        assert chi_generator(5, 1, 3) == i4 + e(4, 2, 1).scale(3)
        assert chi_generator(5, 4, 3) == i4 - e(4, 3, 4).scale(3)
        with pytest.raises(BoundsError):
            chi_generator(5, 5, 1)

    def test_displayed_u_pattern(self):
        i4 = RatMatrix.identity(4)
        assert u_generator(4, 2, 1, displayed=True) == i4 + e(4, 2, 1) + e(4, 2, 3)
        assert u_generator(4, 1, 1, displayed=True) == i4 + e(4, 1, 2)

    def test_used_u_pattern_is_transpose(self):
        i4 = RatMatrix.identity(4)
        assert u_generator(4, 2, 1) == i4 + e(4, 1, 2) + e(4, 3, 2)
        assert u_generator(4, 1, 1) == i4 + e(4, 2, 1)
        for i in range(1, 5):
            assert u_generator(4, i, 5) == u_generator(4, i, 5, displayed=True).transpose()
        with pytest.raises(BoundsError):
            u_generator(4, 0, 1)

    def test_displayed_pattern_fails_conjugation(self):
        chi = chi_generator(5, 2, 3)
        assert delta_conjugate(chi) != u_generator(4, 2, 3, displayed=True)
        assert delta_conjugate(chi) == u_generator(4, 2, 3)

    def test_delta_conjugate_basics(self):
        assert delta_conjugate(RatMatrix.identity(4)) == RatMatrix.identity(4)
        m = RatMatrix.from_function(4, 4, lambda i, j: i - 2 * j)
        assert delta_conjugate(delta_conjugate(m)) == m

    @given(st.integers(2, 10), st.data(), rationals(30))
    def test_lemma_positive(self, n, data, t):
        i = data.draw(st.integers(1, n - 1))
        assert delta_conjugate(chi_generator(n, i, t)) == u_generator(n - 1, i, (-1) ** i * t)

    @given(st.integers(1, 5), st.data(), rationals(20, True))
    def test_u_is_tnn(self, size, data, t):
        assert is_tnn_matrix(u_generator(size, data.draw(st.integers(1, size)), t))


class TestReducedMatrix:
    def test_n2_unit(self):
        assert reduced_boundary_matrix(default_spec(2), unit(2)) == RatMatrix([[1]])

    @given(specs_and_params(2, 6))
    def test_factorization_and_tnn(self, case):
        spec, r = case
        m = reduced_boundary_matrix(spec, r)
        assert m == u_product(spec, r)
        assert is_tnn_matrix(m)


class TestEmbedding:
    def test_n3_unit(self):
        point = embed_odd(default_spec(3), unit(3))
        assert point.representative.shape == (2, 4)
        values = [v for _, v in plucker(point)]
        assert len(values) == 6
        assert all(v >= 0 for v in values) or all(v <= 0 for v in values)

    def test_even_rejected(self):
        with pytest.raises(ParityError):
            embed_odd(default_spec(4), unit(4))

    @given(specs_and_params(3, 5, odd=True))
    def test_corrected_identity_and_sign(self, case):
        spec, r = case
        m = reduced_boundary_matrix(spec, r)
        assert nonneg_identity_holds(m)
        assert transformed_representative(m) == psi(m)
        assert basis_change_preserves_isotropy(m, spec.n)
        assert is_tnn_point(embed_odd(spec, r))

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_displayed_identity_gives_minus_identity(self, n):
        m = reduced_boundary_matrix(default_spec(n), unit(n))
        size = n - 1
        od = omega0(size) @ d_matrix(size)
        assert od @ od == -RatMatrix.identity(size)
        left = transformed_representative(m, displayed=True).submatrix(range(1, n), range(1, n))
        assert left == -RatMatrix.identity(size)
        assert not nonneg_identity_holds(m, displayed=True)

    def test_basis_change_odd_size_agrees(self):
        # the two readings coincide when the block size is odd
        assert basis_change(3) == basis_change(3, displayed=True)
        assert basis_change(4) != basis_change(4, displayed=True)


class TestQuotient:
    @given(st.integers(2, 8))
    def test_xi_decomposition(self, n):
        assert RatMatrix.row_vector(xi_in_f_basis(n)) @ f_basis(2 * n) == RatMatrix.row_vector(xi_vector(n))

    @given(st.integers(2, 8))
    def test_reduced_form_nondegenerate(self, n):
        assert quotient_basis(n).shape == (2 * n - 2, 2 * n)
        assert rank(reduced_eta(n)) == 2 * n - 2

    def test_projection_kills_xi(self):
        assert project_to_quotient(RatMatrix.row_vector(xi_vector(3)), 3).is_zero()
        with pytest.raises(InvarianceError):
            project_to_quotient(RatMatrix.row_vector([1, 0, 0, 0, 0, 0]), 3)

    @given(specs_and_params(2, 6))
    def test_theorem_lagr(self, case):
        spec, r = case
        result = theorem_lagr_check(spec, r)
        assert result, result.witness

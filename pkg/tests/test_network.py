from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals, resistance_maps
from vertexnet.linalg import RatMatrix, rank
from vertexnet.network import (
    STANDARD_TEMPLATES,
    ElectricalNetwork,
    NetworkError,
    StandardNetwork,
    kirchhoff_matrix,
    parameter_pairs,
    response_matrix,
    standard_network,
)
from vertexnet.sampling import make_rng, random_network

LAPLACIAN_3 = RatMatrix([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])


def triangle(c12, c13, c23):
    return ElectricalNetwork(3, 3, ((1, 2, c12), (1, 3, c13), (2, 3, c23)))


def star(a, b, c):
    return ElectricalNetwork(3, 4, ((1, 4, a), (2, 4, b), (3, 4, c)))


class TestKirchhoff:
    def test_triangle_unit(self):
        assert kirchhoff_matrix(triangle(1, 1, 1)) == LAPLACIAN_3

    def test_single_edge(self):
        net = ElectricalNetwork(2, 2, ((1, 2, 5),))
        assert kirchhoff_matrix(net) == RatMatrix([[5, -5], [-5, 5]])

    def test_star_diagonal(self):
        a, b, c = Fraction(2), Fraction(3, 7), Fraction(5)
        k = kirchhoff_matrix(star(a, b, c))
        assert [k[i, i] for i in range(1, 5)] == [a, b, c, a + b + c]
        assert k[1, 4] == -a and k[1, 2] == 0

    def test_parallel_edges_add(self):
        net = ElectricalNetwork(2, 2, ((1, 2, 1), (2, 1, 2)))
        assert kirchhoff_matrix(net) == RatMatrix([[3, -3], [-3, 3]])

    @given(st.integers(2, 4), st.integers(0, 10**6))
    def test_laplacian_shape(self, n, seed):
        k = kirchhoff_matrix(random_network(n, make_rng("k", seed), 20))
        assert k.is_symmetric()
        assert all(sum(row) == 0 for row in k.rows())
        assert rank(k) == k.nrows - 1  # connected


class TestValidation:
    @pytest.mark.parametrize(
        "args",
        [
            (3, 3, ((1, 1, 1), (1, 2, 1), (2, 3, 1))),
            (3, 3, ((1, 2, 0), (2, 3, 1))),
            (3, 3, ((1, 2, 1),)),
            (3, 3, ((1, 4, 1), (2, 3, 1))),
            (4, 3, ((1, 2, 1), (2, 3, 1))),
        ],
        ids=["loop", "zero-c", "disconnected", "range", "boundary-count"],
    )
    def test_rejects(self, args):
        with pytest.raises(NetworkError):
            ElectricalNetwork(*args)

    def test_json_round_trip(self):
        net = star(1, Fraction(2, 3), 4)
        text = net.to_json()
        assert '"c": "2/3"' in text
        assert ElectricalNetwork.from_json(text) == net


class TestResponse:
    def test_no_interior_is_kirchhoff(self):
        assert response_matrix(triangle(1, 1, 1)) == LAPLACIAN_3

    def test_star_unit(self):
        assert response_matrix(star(1, 1, 1)) == LAPLACIAN_3.scale(Fraction(1, 3))

    def test_star_triangle_equivalence_unit(self):
        third = Fraction(1, 3)
        assert response_matrix(star(1, 1, 1)) == response_matrix(triangle(third, third, third))

    @given(rationals(20, True), rationals(20, True), rationals(20, True))
    def test_star_triangle_equivalence(self, a, b, c):
        s = a + b + c
        assert response_matrix(star(a, b, c)) == response_matrix(triangle(a * b / s, a * c / s, b * c / s))

    @given(st.integers(2, 4), st.integers(0, 10**6))
    def test_response_is_laplacian(self, n, seed):
        m = response_matrix(random_network(n, make_rng("resp", seed), 20))
        assert m.shape == (n, n)
        assert m.is_symmetric()
        assert all(sum(row) == 0 for row in m.rows())
        assert all(m[i, j] <= 0 for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


class TestStandardParameters:
    def test_counts(self):
        assert len(parameter_pairs(3)) == 3
        assert len(parameter_pairs(4)) == 6
        net = standard_network(3, {p: 1 for p in parameter_pairs(3)})
        assert list(net.resistances) == [(1, 2), (1, 3), (2, 3)]

    def test_missing_or_nonpositive(self):
        with pytest.raises(NetworkError):
            standard_network(3, {(1, 2): 1, (1, 3): 1})
        with pytest.raises(NetworkError):
            standard_network(3, {(1, 2): 1, (1, 3): 1, (2, 3): 0})
        with pytest.raises(NetworkError):
            standard_network(1, {})

    def test_string_keys(self):
        net = StandardNetwork.from_json('{"n": 3, "r": {"1,2": "2", "1,3": "1/2", "2,3": "3"}}')
        assert net.resistances[(1, 3)] == Fraction(1, 2)
        assert StandardNetwork.from_json(net.to_json()) == net

    @given(resistance_maps(4))
    def test_realizations_use_conductivity(self, r):
        net = standard_network(4, r)
        assert net.realization is not None
        assert net.realization.n_total == STANDARD_TEMPLATES[4].n_total
        for (u, v, c), (_, _, pair) in zip(net.realization.edges, STANDARD_TEMPLATES[4].edges):
            assert c == 1 / r[pair] == net.conductivity(pair)

    def test_larger_n_has_no_realization(self):
        assert standard_network(5, {p: 1 for p in parameter_pairs(5)}).realization is None

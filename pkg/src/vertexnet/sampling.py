"""Seeded generation of random exact inputs."""

from __future__ import annotations

import random
from fractions import Fraction

from .linalg import RatMatrix
from .network import ElectricalNetwork, Pair, parameter_pairs

DEFAULT_BOUND = 100


def make_rng(*key) -> random.Random:
    """Deterministic generator keyed by arbitrary printable parts."""
    return random.Random(":".join(str(k) for k in key))


def positive_rational(rng: random.Random, bound: int = DEFAULT_BOUND) -> Fraction:
    return Fraction(rng.randint(1, bound), rng.randint(1, bound))


def signed_rational(rng: random.Random, bound: int = DEFAULT_BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_resistances(n: int, rng: random.Random, bound: int = DEFAULT_BOUND) -> dict[Pair, Fraction]:
    return {p: positive_rational(rng, bound) for p in parameter_pairs(n)}


def random_matrix(nrows: int, ncols: int, rng: random.Random, bound: int = DEFAULT_BOUND) -> RatMatrix:
    return RatMatrix([[signed_rational(rng, bound) for _ in range(ncols)] for _ in range(nrows)])


def random_network(n: int, rng: random.Random, bound: int = DEFAULT_BOUND, max_interior: int = 2) -> ElectricalNetwork:
    """Random connected network: a random spanning tree plus a few extra edges."""
    total = n + rng.randint(0, max_interior)
    order = list(range(1, total + 1))
    rng.shuffle(order)
    edges = []
    for k in range(1, total):
        edges.append((order[k], order[rng.randrange(k)], positive_rational(rng, bound)))
    for _ in range(rng.randint(0, total)):
        u, v = rng.sample(range(1, total + 1), 2)
        edges.append((u, v, positive_rational(rng, bound)))
    return ElectricalNetwork(n, total, tuple(edges))

"""Electrical networks, Kirchhoff matrices and response matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .linalg import RatMatrix, as_rational, format_rational, parse_rational, schur_complement

Pair = tuple[int, int]


class NetworkError(ValueError):
    pass


@dataclass(frozen=True)
class ElectricalNetwork:
    """Connected loop-free graph on vertices ``1..n_total``; ``1..n_boundary`` are boundary."""

    n_boundary: int
    n_total: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v), as_rational(c)) for u, v, c in self.edges)
        object.__setattr__(self, "edges", edges)
        if not 1 <= self.n_boundary <= self.n_total:
            raise NetworkError(f"need 1 <= n_boundary <= n_total, got {self.n_boundary}, {self.n_total}")
        for u, v, c in edges:
            if not (1 <= u <= self.n_total and 1 <= v <= self.n_total):
                raise NetworkError(f"edge ({u}, {v}) leaves vertex range 1..{self.n_total}")
            if u == v:
                raise NetworkError(f"loop at vertex {u}")
            if c <= 0:
                raise NetworkError(f"edge ({u}, {v}) has non-positive conductivity {c}")
        if not self._connected():
            raise NetworkError("network graph is not connected")

    def _connected(self) -> bool:
        adj: dict[int, set[int]] = {k: set() for k in range(1, self.n_total + 1)}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {1}
        stack = [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_total

    @property
    def n_interior(self) -> int:
        return self.n_total - self.n_boundary

    def to_dict(self) -> dict:
        return {
            "n_boundary": self.n_boundary,
            "n_total": self.n_total,
            "edges": [{"u": u, "v": v, "c": format_rational(c)} for u, v, c in self.edges],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ElectricalNetwork":
        return cls(
            int(data["n_boundary"]),
            int(data["n_total"]),
            tuple((int(e["u"]), int(e["v"]), parse_rational(str(e["c"]))) for e in data["edges"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ElectricalNetwork":
        return cls.from_dict(json.loads(text))


def kirchhoff_matrix(net: ElectricalNetwork) -> RatMatrix:
    n = net.n_total
    t = [[Fraction(0)] * n for _ in range(n)]
    # parallel edges accumulate
    for u, v, c in net.edges:
        i, j = u - 1, v - 1
        t[i][j] -= c
        t[j][i] -= c
        t[i][i] += c
        t[j][j] += c
    return RatMatrix(t)


def response_matrix(net: ElectricalNetwork) -> RatMatrix:
    """Schur complement of the interior block of the Kirchhoff matrix."""
    return schur_complement(kirchhoff_matrix(net), net.n_boundary)


# -- standard graphs ---------------------------------------------------------


def parameter_pairs(n: int) -> list[Pair]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


@dataclass(frozen=True)
class GraphTemplate:
    """A graph whose edges are each labelled by one parameter pair ``(i, j)``.

    The edge ``(u, v, (i, j))`` gets conductivity ``1 / r_ij``.
    """

    name: str
    n: int
    n_total: int
    edges: tuple[tuple[int, int, Pair], ...]

    def realize(self, resistances: Mapping[Pair, Fraction]) -> ElectricalNetwork:
        return ElectricalNetwork(
            self.n,
            self.n_total,
            tuple((u, v, 1 / resistances[p]) for u, v, p in self.edges),
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "n_total": self.n_total,
            "edges": [{"u": u, "v": v, "pair": list(p)} for u, v, p in self.edges],
        }


# Unlabelled candidate graphs searched by calibration: (name, n_total, edges).
CANDIDATE_GRAPHS: dict[int, list[tuple[str, int, list[tuple[int, int]]]]] = {
    3: [
        ("triangle", 3, [(1, 2), (1, 3), (2, 3)]),
        ("star", 4, [(1, 4), (2, 4), (3, 4)]),
    ],
    4: [
        ("sigma4", 5, [(1, 5), (2, 5), (3, 5), (4, 5), (1, 4), (3, 4)]),
        ("star+12+34", 5, [(1, 5), (2, 5), (3, 5), (4, 5), (1, 2), (3, 4)]),
        ("complete4", 4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]),
    ],
}

# Frozen output of ``vertexnet.calibration.calibrate`` (re-derived in the tests).
STANDARD_TEMPLATES: dict[int, GraphTemplate] = {
    3: GraphTemplate(
        "triangle", 3, 3,
        ((1, 2, (1, 3)), (1, 3, (2, 3)), (2, 3, (1, 2))),
    ),
    4: GraphTemplate(
        "sigma4", 4, 5,
        (
            (1, 5, (2, 4)), (2, 5, (1, 4)), (3, 5, (1, 3)),
            (4, 5, (2, 3)), (1, 4, (3, 4)), (3, 4, (1, 2)),
        ),
    ),
}


def validate_resistances(n: int, resistances: Mapping) -> dict[Pair, Fraction]:
    expected = parameter_pairs(n)
    out: dict[Pair, Fraction] = {}
    for key, value in resistances.items():
        pair = _parse_pair(key)
        if pair not in expected:
            raise NetworkError(f"unexpected parameter {pair} for n={n}")
        r = as_rational(value)
        if r <= 0:
            raise NetworkError(f"resistance r{pair} = {r} is not positive")
        out[pair] = r
    missing = [p for p in expected if p not in out]
    if missing:
        raise NetworkError(f"missing resistances for pairs {missing}")
    return {p: out[p] for p in expected}


def _parse_pair(key) -> Pair:
    if isinstance(key, str):
        a, b = key.split(",")
        return int(a), int(b)
    i, j = key
    return int(i), int(j)


@dataclass(frozen=True)
class StandardNetwork:
    n: int
    resistances: dict[Pair, Fraction] = field(compare=True)
    realization: ElectricalNetwork | None = None

    def conductivity(self, pair: Pair) -> Fraction:
        return 1 / self.resistances[pair]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": {f"{i},{j}": format_rational(r) for (i, j), r in self.resistances.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "StandardNetwork":
        return standard_network(int(data["n"]), {k: parse_rational(str(v)) for k, v in data["r"].items()})

    @classmethod
    def from_json(cls, text: str) -> "StandardNetwork":
        return cls.from_dict(json.loads(text))


def standard_network(
    n: int, resistances: Mapping, template: GraphTemplate | None = None
) -> StandardNetwork:
    """Parameters ``r_ij`` (``1 <= i < j <= n``) plus a graph realization when one is known."""
    if n < 2:
        raise NetworkError(f"standard networks need n >= 2, got {n}")
    r = validate_resistances(n, resistances)
    if template is None:
        template = STANDARD_TEMPLATES.get(n)
    realization = template.realize(r) if template is not None else None
    return StandardNetwork(n, r, realization)

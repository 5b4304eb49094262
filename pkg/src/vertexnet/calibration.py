"""Discover the factor ordering, edge labelling and W1 convention under
which W1 and W2 span the same row space.

The product over pairs does not fix an order and the standard graphs are
only given pictorially, so both are searched.  Row spaces are keyed by their
exact RREF, which lets every correspondence be matched against every
ordering with one dictionary lookup; each hit is then re-confirmed with
``row_space_equal`` on fresh draws.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .grassmann import CheckResult, row_space_equal
from .linalg import row_basis
from .network import (
    CANDIDATE_GRAPHS,
    STANDARD_TEMPLATES,
    GraphTemplate,
    Pair,
    parameter_pairs,
)
from .sampling import make_rng, random_resistances
from .vertex import W1_BLOCKS, W1_TRANSPOSED, GeneratorProductSpec, default_spec, w1, w2

CALIBRATED_SIZES = (3, 4)
FROZEN_W1_BLOCK = W1_TRANSPOSED


class CalibrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Configuration:
    w1_block: str
    spec: GeneratorProductSpec
    template: GraphTemplate

    def to_dict(self) -> dict:
        return {
            "w1_block": self.w1_block,
            "ordering": [list(p) for p in self.spec.ordering],
            "realization": self.template.to_dict(),
        }


@dataclass
class CalibrationResult:
    n: int
    seed: int
    draws: int
    passing: list[Configuration]
    searched: list[dict] = field(default_factory=list)

    @property
    def chosen(self) -> Configuration:
        if not self.passing:
            raise CalibrationError(f"no configuration reproduces W1 ~ W2 at n = {self.n}")
        return self.passing[0]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "seed": self.seed,
            "draws": self.draws,
            "searched": self.searched,
            "passing": [c.to_dict() for c in self.passing],
            "chosen": self.passing[0].to_dict() if self.passing else None,
        }


def frozen_configuration(n: int) -> Configuration:
    if n not in STANDARD_TEMPLATES:
        raise CalibrationError(f"no calibrated standard graph for n = {n}")
    return Configuration(FROZEN_W1_BLOCK, default_spec(n), STANDARD_TEMPLATES[n])


def labelled_templates(name: str, n: int, n_total: int, edges: list[tuple[int, int]]) -> Iterable[GraphTemplate]:
    pairs = parameter_pairs(n)
    if len(edges) != len(pairs):
        raise CalibrationError(f"graph {name!r} has {len(edges)} edges, need {len(pairs)}")
    for perm in itertools.permutations(pairs):
        yield GraphTemplate(name, n, n_total, tuple((u, v, p) for (u, v), p in zip(edges, perm)))


def _key(m) -> tuple:
    return row_basis(m).rows()


def check_configuration(config: Configuration, draws: list[dict[Pair, object]]) -> CheckResult:
    """``row_space_equal(W1, W2)`` on every draw; witness is the first failing draw."""
    for k, r in enumerate(draws):
        net = config.template.realize(r)
        if not row_space_equal(w1(net, config.w1_block), w2(config.spec, r)):
            return CheckResult(False, k + 1, {"draw": k})
    return CheckResult(True, len(draws))


def calibration_draws(n: int, seed: int, count: int, bound: int = 30) -> list[dict]:
    rng = make_rng("calibrate", n, seed)
    return [random_resistances(n, rng, bound) for _ in range(count)]


def calibrate(n: int, seed: int = 0, draws: int = 3) -> CalibrationResult:
    """Search W1 conventions x candidate graphs x labellings x orderings.

    The screening draw is separate from the ``draws`` confirmation draws.
    Passing configurations are listed literal convention first, then in
    candidate-graph order, then by ordering and labelling.
    """
    if n not in CALIBRATED_SIZES:
        raise ValueError(f"calibration is defined for n in {CALIBRATED_SIZES}, got {n}")
    if draws < 3:
        raise ValueError("calibration needs at least 3 confirmation draws")
    return _calibrate(n, seed, draws)


@lru_cache(maxsize=None)
def _calibrate(n: int, seed: int, draws: int) -> CalibrationResult:
    screen, *confirm = calibration_draws(n, seed, draws + 1)
    orderings = [GeneratorProductSpec(n, o) for o in itertools.permutations(parameter_pairs(n))]
    w2_keys = [(_key(w2(spec, screen)), spec) for spec in orderings]
    passing: list[Configuration] = []
    searched = []
    for block in W1_BLOCKS:
        for name, n_total, edges in CANDIDATE_GRAPHS[n]:
            by_key: dict[tuple, list[GraphTemplate]] = {}
            for template in labelled_templates(name, n, n_total, edges):
                by_key.setdefault(_key(w1(template.realize(screen), block)), []).append(template)
            hits = 0
            found = []
            for key, spec in w2_keys:
                for template in by_key.get(key, ()):
                    hits += 1
                    config = Configuration(block, spec, template)
                    if check_configuration(config, confirm):
                        found.append(config)
            found.sort(key=lambda c: (c.spec.ordering, [e[2] for e in c.template.edges]))
            passing.extend(found)
            searched.append(
                {
                    "w1_block": block,
                    "graph": name,
                    "orderings": len(orderings),
                    "labellings": sum(len(v) for v in by_key.values()),
                    "screen_hits": hits,
                    "passing": len(found),
                }
            )
    return CalibrationResult(n, seed, draws, passing, searched)

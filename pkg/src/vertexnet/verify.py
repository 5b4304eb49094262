"""Seeded verification battery: one runner per statement id."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from . import calibration
from .grassmann import CheckResult, is_isotropic, is_tnn_matrix, is_tnn_point, psi, psi_minor_identity_check
from .linalg import RatMatrix, det, rank, vstack
from .network import Pair
from .reduction import (
    basis_change_preserves_isotropy,
    chi_generator,
    delta_conjugate,
    embed_odd,
    nonneg_identity_holds,
    reduced_boundary_matrix,
    restrict_left_action,
    theorem_lagr_check,
    u_generator,
    u_product,
)
from .sampling import make_rng, positive_rational, random_matrix, random_resistances, signed_rational
from .vertex import (
    GeneratorProductSpec,
    boundary_matrix,
    default_spec,
    eta_form,
    f_basis,
    g_form,
    modified_boundary_matrix,
    mu_vector,
    phi_generator,
    s_matrix,
    v_tilde_basis,
    w0,
    w2,
    w_vector,
    xi_vector,
    zeta_vector,
)

PASS = "pass"
FAIL = "fail"
INFO = "informational"
UNRESOLVED = "unresolved"

# Small entries keep exact arithmetic cheap at n = 7..8.
DRAW_BOUND = 20


class UnknownStatementError(KeyError):
    pass


class GuardError(ValueError):
    pass


@dataclass
class Outcome:
    verdict: str
    witness: dict | None = None
    details: dict | None = None


@dataclass(frozen=True)
class Statement:
    id: str
    anchor: str
    n_min: int
    n_max: int
    default_draws: int
    runner: Callable[[int, int, list], Outcome]
    draw_kind: str
    sizes: tuple[int, ...] | None = None

    def admits(self, n: int) -> bool:
        if self.sizes is not None:
            return n in self.sizes
        return self.n_min <= n <= self.n_max


def _vec(values) -> RatMatrix:
    return RatMatrix.row_vector(values)


def _col(values) -> RatMatrix:
    return RatMatrix.column_vector(values)


def _first_failure(checks: Mapping[str, bool]) -> str | None:
    return next((name for name, ok in checks.items() if not ok), None)


def _run_draws(draws: list, body: Callable[[int, object], Mapping[str, bool] | CheckResult]) -> Outcome:
    for k, draw in enumerate(draws):
        result = body(k, draw)
        if isinstance(result, CheckResult):
            if not result:
                return Outcome(FAIL, {"draw": k, **(result.witness or {})})
            continue
        failed = _first_failure(result)
        if failed is not None:
            return Outcome(FAIL, {"draw": k, "check": failed})
    return Outcome(PASS)


# -- draw construction ---------------------------------------------------------


def resistance_draws(n: int, seed: int, statement: str, count: int) -> list[dict[Pair, Fraction]]:
    rng = make_rng(statement, n, seed)
    return [random_resistances(n, rng, DRAW_BOUND) for _ in range(count)]


def shuffled_spec(n: int, seed: int, k: int) -> GeneratorProductSpec:
    """Draw 0 uses the default order; later draws use random orders."""
    if k == 0:
        return default_spec(n)
    rng = make_rng("ordering", n, seed, k)
    ordering = list(default_spec(n).ordering)
    rng.shuffle(ordering)
    return GeneratorProductSpec(n, tuple(ordering))


# -- statements ----------------------------------------------------------------


def run_eq_sp(n: int, seed: int, draws: list) -> Outcome:
    g = g_form(n)

    def body(k, r):
        spec = shuffled_spec(n, seed, k)
        m = modified_boundary_matrix(spec, r)
        gens_ok = all(
            (lambda p: p @ g @ p.transpose() == g)(phi_generator(n, j - i, r[(i, j)]))
            for i, j in spec.ordering
        )
        return {"det_one": det(m) == 1, "preserves_g": m @ g @ m.transpose() == g, "each_generator": gens_ok}

    return _run_draws(draws, body)


def run_isotropy(n: int, seed: int, draws: list) -> Outcome:
    g = g_form(n)
    eta = eta_form(2 * n)

    def body(k, r):
        spec = shuffled_spec(n, seed, k)
        mb = boundary_matrix(spec, r)
        return {"w0_eta_w0t_zero": is_isotropic(w0(spec, r), eta), "mb_g_mbt_minus_g": mb @ g @ mb.transpose() == -g}

    return _run_draws(draws, body)


def run_fixed_vectors(n: int, seed: int, draws: list) -> Outcome:
    mu = _col(mu_vector(n))
    zeta = _vec(zeta_vector(n))
    xi = _vec(xi_vector(n))
    sign = 1 if n % 2 else -1
    expected_xi_eta = _vec(w_vector(n)) if n % 2 == 0 else RatMatrix.zeros(1, 2 * n)
    xi_as_f = _vec([1 if k % 2 else 0 for k in range(1, 2 * n)]) @ f_basis(2 * n)
    static = {
        "xi_left_kernel_S2n": (xi @ s_matrix(2 * n)).is_zero(),
        "xi_eta": xi @ eta_form(2 * n) == expected_xi_eta,
        "xi_sum_odd_f": xi_as_f == xi,
    }

    def body(k, r):
        spec = shuffled_spec(n, seed, k)
        mc = modified_boundary_matrix(spec, r)
        rep = w0(spec, r)
        checks = dict(static)
        checks.update(
            {
                "mcheck_mu": mc @ mu == mu,
                "zeta_mcheck": zeta @ mc == zeta,
                "mb_mu_parity": boundary_matrix(spec, r) @ mu == sign * mu,
                "xi_in_w0": rank(vstack(rep, xi)) == rank(rep),
            }
        )
        return checks

    return _run_draws(draws, body)


def run_lemma_subspace(n: int, seed: int, draws: list) -> Outcome:
    vt = v_tilde_basis(n)
    dim_ok = rank(vt) == 2 * n - 2

    def body(k, r):
        rep = w2(shuffled_spec(n, seed, k), r)
        return {
            "v_tilde_dim": dim_ok,
            "w2_rank": rank(rep) == n - 1,
            "w2_in_v_tilde": rank(vstack(vt, rep)) == 2 * n - 2,
        }

    return _run_draws(draws, body)


def _t_values(n: int, seed: int, statement: str, count: int) -> list[list[Fraction]]:
    rng = make_rng(statement, "t", n, seed)
    return [[signed_rational(rng, DRAW_BOUND) for _ in range(1, n)] for _ in range(count)]


def run_restriction(n: int, seed: int, draws: list) -> Outcome:
    def body(k, ts):
        return {
            f"chi_{i}": restrict_left_action(phi_generator(n, i, t)).matrix == chi_generator(n, i, t)
            for i, t in enumerate(ts, start=1)
        }

    return _run_draws(draws, body)


def run_lemma_positive(n: int, seed: int, draws: list) -> Outcome:
    def body(k, ts):
        return {
            f"u_{i}": delta_conjugate(chi_generator(n, i, t)) == u_generator(n - 1, i, (-1) ** i * t)
            for i, t in enumerate(ts, start=1)
        }

    return _run_draws(draws, body)


def run_lemma_vertextheor(n: int, seed: int, draws: list) -> Outcome:
    counted = []

    def body(k, r):
        spec = shuffled_spec(n, seed, k)
        m = reduced_boundary_matrix(spec, r)
        if m != u_product(spec, r):
            return {"u_factorization": False}
        result = is_tnn_matrix(m)
        counted.append(result.checked)
        return result

    out = _run_draws(draws, body)
    out.details = {"minors_per_draw": counted[0] if counted else 0}
    return out


def _u_product_draws(size: int, seed: int, count: int) -> list[RatMatrix]:
    rng = make_rng("lemma-post", size, seed)
    out = []
    for _ in range(count):
        m = RatMatrix.identity(size)
        for _ in range(2 * size + 2):
            m = m @ u_generator(size, rng.randint(1, size), positive_rational(rng, DRAW_BOUND))
        out.append(m)
    return out


def run_lemma_post(n: int, seed: int, draws: list) -> Outcome:
    def body(k, a):
        tnn = is_tnn_matrix(a)
        if not tnn:
            return {"input_tnn": False}
        return is_tnn_point(psi(a))

    return _run_draws(draws, body)


def run_minor_identity(n: int, seed: int, draws: list) -> Outcome:
    return _run_draws(draws, lambda k, a: psi_minor_identity_check(a))


def run_theorem_lagr(n: int, seed: int, draws: list) -> Outcome:
    return _run_draws(draws, lambda k, r: theorem_lagr_check(shuffled_spec(n, seed, k), r))


def run_theorem_nonneg(n: int, seed: int, draws: list) -> Outcome:
    if n % 2 == 0:
        one_sign = []
        for k, r in enumerate(draws):
            m = reduced_boundary_matrix(shuffled_spec(n, seed, k), r)
            one_sign.append(bool(is_tnn_point(psi(m))))
        return Outcome(INFO, None, {"even_n_one_sign_draws": sum(one_sign), "note": "established for odd n only"})
    displayed = []

    def body(k, r):
        spec = shuffled_spec(n, seed, k)
        point = embed_odd(spec, r)
        m = reduced_boundary_matrix(spec, r)
        displayed.append(nonneg_identity_holds(m, displayed=True))
        if not basis_change_preserves_isotropy(m, n):
            return {"isotropy_preserved": False}
        return is_tnn_point(point)

    out = _run_draws(draws, body)
    out.details = {"displayed_identity_literal_holds": all(displayed) if displayed else None}
    return out


def run_lemma_w1w2(n: int, seed: int, draws: list) -> Outcome:
    result = calibration.calibrate(n)
    if not result.passing:
        return Outcome(UNRESOLVED, {"calibration": "no passing configuration"}, {"searched": result.searched})
    config = calibration.frozen_configuration(n)
    details = {"w1_block": config.w1_block, "frozen_matches_calibration": result.chosen == config}
    check = calibration.check_configuration(config, draws)
    if not check:
        return Outcome(FAIL, check.witness, details)
    if not details["frozen_matches_calibration"]:
        return Outcome(FAIL, {"calibration": "frozen configuration differs from search result"}, details)
    return Outcome(PASS, None, details)


# -- registry -----------------------------------------------------------------

RESISTANCES = "resistances"
STEPS = "steps"
SQUARE = "square"
U_PRODUCT = "u-product"


def make_draws(kind: str, statement: str, n: int, seed: int, count: int) -> list:
    if kind == RESISTANCES:
        return resistance_draws(n, seed, statement, count)
    if kind == STEPS:
        return _t_values(n, seed, statement, count)
    if kind == SQUARE:
        rng = make_rng(statement, n, seed)
        return [random_matrix(n, n, rng, DRAW_BOUND) for _ in range(count)]
    if kind == U_PRODUCT:
        return _u_product_draws(n, seed, count)
    raise ValueError(f"unknown draw kind {kind!r}")


STATEMENTS: dict[str, Statement] = {
    st.id: st
    for st in (
        Statement("eq-sp", "modified boundary matrix preserves g", 2, 12, 20, run_eq_sp, RESISTANCES),
        Statement("isotropy", "(M_B, Id) is isotropic for eta", 2, 12, 20, run_isotropy, RESISTANCES),
        Statement("fixed-vectors", "fixed vectors mu, zeta and the kernel vector xi", 2, 12, 10, run_fixed_vectors, RESISTANCES),
        Statement("lemma-subspace", "W2 lies in V-tilde", 2, 10, 10, run_lemma_subspace, RESISTANCES),
        Statement("restriction", "chi is phi restricted to mu-perp", 2, 12, 10, run_restriction, STEPS),
        Statement("lemma-positive", "Delta chi_i(t) Delta = u_i((-1)^i t)", 2, 12, 10, run_lemma_positive, STEPS),
        Statement("lemma-vertextheor", "reduced boundary matrix is a u-product and TNN", 2, 8, 10, run_lemma_vertextheor, RESISTANCES),
        Statement("lemma-post", "psi of a TNN matrix is a nonnegative point", 1, 6, 5, run_lemma_post, U_PRODUCT),
        Statement("minor-identity", "maximal minors of psi(A) are minors of A", 1, 6, 5, run_minor_identity, SQUARE),
        Statement("theorem-lagr", "W0 projects to a Lagrangian in w-perp/<xi>", 2, 10, 10, run_theorem_lagr, RESISTANCES),
        Statement("theorem-nonneg", "psi(reduced boundary matrix) is nonnegative, odd n", 2, 9, 25, run_theorem_nonneg, RESISTANCES),
        Statement(
            "lemma-w1w2",
            "W1 and W2 span the same point",
            3,
            4,
            100,
            run_lemma_w1w2,
            RESISTANCES,
            sizes=calibration.CALIBRATED_SIZES,
        ),
    )
}

STATEMENT_IDS = tuple(STATEMENTS)


def is_gating(statement: str, n: int) -> bool:
    return not (statement == "theorem-nonneg" and n % 2 == 0)


def lookup(statement: str) -> Statement:
    try:
        return STATEMENTS[statement]
    except KeyError:
        raise UnknownStatementError(statement) from None


def applicable(n: int) -> list[str]:
    return [sid for sid, st in STATEMENTS.items() if st.admits(n)]


def run_statement(
    statement: str,
    n: int,
    seed: int = 0,
    draws: int | None = None,
    resistances: Mapping[Pair, Fraction] | None = None,
) -> dict:
    """Run one statement and return its report as an ordered dict.

    ``resistances`` replaces the random draws by a single given parameter
    set; only statements that consume resistances accept it.  The key
    ``elapsed`` is wall time and is the only non-reproducible field.
    """
    st = lookup(statement)
    if not st.admits(n):
        bounds = f"n in {st.sizes}" if st.sizes else f"{st.n_min} <= n <= {st.n_max}"
        raise GuardError(f"{statement}: n = {n} is outside the size guard ({bounds})")
    if resistances is not None:
        if st.draw_kind != RESISTANCES:
            raise ValueError(f"{statement} does not take network parameters")
        inputs = [dict(resistances)]
    else:
        inputs = make_draws(st.draw_kind, statement, n, seed, st.default_draws if draws is None else draws)
    start = time.perf_counter()
    outcome = st.runner(n, seed, inputs)
    elapsed = time.perf_counter() - start
    if outcome.verdict == FAIL and outcome.witness is None:
        outcome.witness = {"detail": "unspecified"}
    report = {
        "statement": statement,
        "anchor": st.anchor,
        "n": n,
        "seed": seed,
        "draws": len(inputs),
        "verdict": outcome.verdict,
        "gating": is_gating(statement, n),
        "witness": outcome.witness,
    }
    if outcome.details:
        report["details"] = outcome.details
    report["elapsed"] = round(elapsed, 3)
    return report

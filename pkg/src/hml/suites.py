"""Inequality checkers, one per registered suite, plus the seeded sweep runner.

Each checker evaluates every quantity of its inequality chains, records them
in an :class:`~hml.report.InequalityReport` and compares adjacent links.
Precondition violations (wrong weight constraint, exponent out of range)
raise :class:`~hml.matrix.ConfigurationError`; they are never reported as
inequality failures.

Label notation: ``o`` is the Hadamard product, ``X^(a)`` a Hadamard power,
``X^T`` a transpose, ``|X|_k`` the operator norm on ``l_k``.
"""

from __future__ import annotations

import math
import os
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np

from .matrix import (
    Constraint,
    ConfigurationError,
    WeightVector,
    alternating_product,
    as_nonnegative,
    build_B_alpha,
    build_C_alpha,
    cyclic_factor_B,
    cyclic_product_P,
    entrywise_leq,
    gram_S,
    hadamard_mean,
    hadamard_power,
    product,
    weighted_geometric_mean,
)
from .report import ABS_TOL, REL_TOL, InequalityReport
from .spectral import NormKind, numerical_radius, operator_norm, rho

ENTRYWISE_TOL = 1e-10
NORMS = (NormKind.L1, NormKind.L2, NormKind.LINF)


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 0
    n: int = 4
    m: int = 2
    density: float = 1.0
    weight_mode: Constraint | None = None
    rel_tol: float = REL_TOL
    abs_tol: float = ABS_TOL

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ConfigurationError(f"need n >= 1 and m >= 1, got n={self.n}, m={self.m}")
        if not 0 < self.density <= 1:
            raise ConfigurationError(f"density must be in (0, 1], got {self.density}")
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ConfigurationError("tolerances must be positive")

    def digest(self) -> dict:
        d = asdict(self)
        d["weight_mode"] = self.weight_mode.value if self.weight_mode else None
        del d["rel_tol"], d["abs_tol"]
        return d


DEFAULT_CONFIG = TrialConfig()


def _new_report(suite: str, config: TrialConfig | None, **params) -> InequalityReport:
    config = config or DEFAULT_CONFIG
    digest = {"suite": suite, **config.digest()}
    for k, v in params.items():
        digest[k] = list(v) if isinstance(v, tuple) else v
    return InequalityReport(suite, digest, config.rel_tol, config.abs_tol)


def _require(w: WeightVector, constraint: Constraint) -> None:
    # A sum-one vector also satisfies the sum >= 1 hypothesis.
    if constraint is Constraint.SUM_ONE and w.constraint is not Constraint.SUM_ONE:
        raise ConfigurationError("this checker needs weights summing to 1")
    if w.constraint is Constraint.SUM_ONE and abs(w.total - 1) > 1e-12:
        raise ConfigurationError("weights do not sum to 1")


def _mats(mats, m: int | None = None) -> list[np.ndarray]:
    mats = [as_nonnegative(a) for a in mats]
    if not mats:
        raise ConfigurationError("no matrices given")
    if m is not None and len(mats) != m:
        raise ConfigurationError(f"expected {m} matrices, got {len(mats)}")
    if len({a.shape for a in mats}) != 1:
        raise ConfigurationError("matrices differ in dimension")
    return mats


def _wprod(values: Sequence[float], exps: Sequence[float]) -> float:
    # Python's 0.0 ** 0 == 1.0 matches the 0^0 = 1 convention.
    return math.prod(v ** e for v, e in zip(values, exps))


def _power(x: float, e: float) -> float:
    return max(x, 0.0) ** e


# --------------------------------------------------------------------------
# Grid suites: a k x m grid of operators.

def _grid_terms(grid, w: WeightVector):
    rows = [_mats(row, len(w)) for row in grid]
    if not rows:
        raise ConfigurationError("empty grid")
    _mats([a for row in rows for a in row])
    k, m = len(rows), len(w)
    a = product([weighted_geometric_mean(row, w) for row in rows])
    cols = [product([rows[i][j] for i in range(k)]) for j in range(m)]
    mean = weighted_geometric_mean(cols, w)
    return a, cols, mean


def _grid_report(name, grid, w, config, refined: bool, numerical: bool):
    a, cols, mean = _grid_terms(grid, w)
    rep = _new_report(name, config, k=len(grid), weights=w.weights)
    ok, excess = entrywise_leq(a, mean, ENTRYWISE_TOL)
    rep.entrywise("A", "o_j C_j^(a_j)", ok, excess)
    functionals = [(f"|.|_{kind.value}", lambda x, kind=kind: operator_norm(x, kind))
                   for kind in NORMS]
    functionals.append(("rho", rho))
    if numerical:
        functionals.append(("w", numerical_radius))
    for tag, f in functionals:
        links = [(f"{tag}(A)", f(a))]
        if refined:
            links.append((f"{tag}(o_j C_j^(a_j))", f(mean)))
        links.append((f"prod_j {tag}(C_j)^a_j", _wprod([f(c) for c in cols], w.weights)))
        rep.chain(*links)
    return rep


def check_thm21(grid, w: WeightVector, *, config: TrialConfig | None = None):
    """Product of Hadamard means vs. Hadamard mean of products, unrefined."""
    _require(w, Constraint.SUM_ONE)
    return _grid_report("thm21", grid, w, config, refined=False, numerical=True)


def check_thm23_refined(grid, w: WeightVector, *, config: TrialConfig | None = None):
    _require(w, Constraint.SUM_ONE)
    return _grid_report("thm23", grid, w, config, refined=True, numerical=True)


def check_thm24_sum_ge1(grid, w: WeightVector, *, config: TrialConfig | None = None):
    """Matrix case with sum of weights >= 1; no numerical-radius chain."""
    _require(w, Constraint.SUM_AT_LEAST_ONE)
    return _grid_report("thm24", grid, w, config, refined=True, numerical=False)


# --------------------------------------------------------------------------
# Cyclic products.

def _cyclic_terms(mats, w):
    m = len(mats)
    bprod = product([cyclic_factor_B(mats, w, i) for i in range(1, m + 1)])
    ps = [cyclic_product_P(mats, j) for j in range(1, m + 1)]
    pmean = hadamard_mean(ps, w.weights)
    return bprod, ps, pmean


def check_thm31(mats, w: WeightVector, *, config: TrialConfig | None = None):
    _require(w, Constraint.SUM_ONE)
    mats = _mats(mats, len(w))
    rep = _new_report("thm31", config, weights=w.weights)
    bprod = product([cyclic_factor_B(mats, w, i) for i in range(1, len(mats) + 1)])
    rep.chain(("rho(B_1...B_m)", rho(bprod)), ("rho(A_1...A_m)", rho(product(mats))))
    return rep


def _thm32_like(name, mats, w, config, total_exp: float, numerical_full: bool):
    mats = _mats(mats, len(w))
    rep = _new_report(name, config, weights=w.weights)
    bprod, ps, pmean = _cyclic_terms(mats, w)
    rep.chain(("rho(B_1...B_m)", rho(bprod)),
              ("rho(o_j P_j^(a_j))", rho(pmean)),
              ("rho(A_1...A_m)^a" if total_exp != 1 else "rho(A_1...A_m)",
               _power(rho(product(mats)), total_exp)))
    for kind in NORMS:
        tag = f"|.|_{kind.value}"
        rep.chain((f"{tag}(B_1...B_m)", operator_norm(bprod, kind)),
                  (f"{tag}(o_j P_j^(a_j))", operator_norm(pmean, kind)),
                  (f"prod_j {tag}(P_j)^a_j",
                   _wprod([operator_norm(p, kind) for p in ps], w.weights)))
    wp = _wprod([numerical_radius(p) for p in ps], w.weights)
    if numerical_full:
        rep.chain(("w(B_1...B_m)", numerical_radius(bprod)),
                  ("w(o_j P_j^(a_j))", numerical_radius(pmean)),
                  ("prod_j w(P_j)^a_j", wp))
    else:
        rep.chain(("w(B_1...B_m)", numerical_radius(bprod)),
                  ("w(o_j P_j^(a_j))", numerical_radius(pmean)))
        # Recorded for inspection only: this bound is not valid when sum > 1.
        rep.add("prod_j w(P_j)^a_j [not asserted]", wp)
    return rep


def check_thm32(mats, w: WeightVector, *, config: TrialConfig | None = None):
    _require(w, Constraint.SUM_ONE)
    return _thm32_like("thm32", mats, w, config, 1.0, numerical_full=True)


def check_thm36(mats, w: WeightVector, *, config: TrialConfig | None = None):
    """Sum of weights ``a >= 1``: right end of the rho chain is ``rho(A_1...A_m)^a``."""
    _require(w, Constraint.SUM_AT_LEAST_ONE)
    return _thm32_like("thm36", mats, w, config, w.total, numerical_full=False)


def check_cor33(mats, *, config: TrialConfig | None = None):
    """Equal weights 1/m."""
    mats = _mats(mats)
    m = len(mats)
    w = WeightVector.equal(m)
    rep = _new_report("cor33", config)
    g = weighted_geometric_mean(mats, w)
    gm = np.linalg.matrix_power(g, m)
    _, ps, pmean = _cyclic_terms(mats, w)
    rep.chain(("rho(o_j A_j^(1/m))", rho(g)),
              ("rho(o_j P_j^(1/m))^(1/m)", _power(rho(pmean), 1 / m)),
              ("rho(A_1...A_m)^(1/m)", _power(rho(product(mats)), 1 / m)))
    for kind in NORMS:
        tag = f"|.|_{kind.value}"
        rep.chain((f"{tag}((o_j A_j^(1/m))^m)", operator_norm(gm, kind)),
                  (f"{tag}(o_j P_j^(1/m))", operator_norm(pmean, kind)),
                  (f"prod_j {tag}(P_j)^(1/m)",
                   _wprod([operator_norm(p, kind) for p in ps], w.weights)))
    rep.chain(("w((o_j A_j^(1/m))^m)", numerical_radius(gm)),
              ("w(o_j P_j^(1/m))", numerical_radius(pmean)),
              ("prod_j w(P_j)^(1/m)", _wprod([numerical_radius(p) for p in ps], w.weights)))
    return rep


def check_cor35(a, b, alpha: float = 0.5, *, config: TrialConfig | None = None):
    """Two operators, weights ``alpha`` and ``1 - alpha`` with alpha in [0, 1]."""
    if not 0 <= alpha <= 1:
        raise ConfigurationError(f"alpha must be in [0, 1], got {alpha}")
    a, b = _mats([a, b], 2)
    rep = _new_report("cor35", config, alpha=alpha)
    beta = 1 - alpha
    ab, ba = a @ b, b @ a
    x = (hadamard_power(a, alpha) * hadamard_power(b, beta)) @ \
        (hadamard_power(b, alpha) * hadamard_power(a, beta))
    y = hadamard_power(ab, alpha) * hadamard_power(ba, beta)
    g = np.sqrt(a) * np.sqrt(b)
    y_half = np.sqrt(ab) * np.sqrt(ba)

    rep.chain(("rho(X_a)", rho(x)), ("rho(Y_a)", rho(y)), ("rho(AB)", rho(ab)))
    rep.chain(("rho(A^(1/2) o B^(1/2))", rho(g)),
              ("rho(Y_1/2)^(1/2)", math.sqrt(rho(y_half))),
              ("rho(AB)^(1/2)", math.sqrt(rho(ab))))
    for kind in NORMS:
        tag = f"|.|_{kind.value}"
        n_ab, n_ba = operator_norm(ab, kind), operator_norm(ba, kind)
        rep.chain((f"{tag}(X_a)", operator_norm(x, kind)),
                  (f"{tag}(Y_a)", operator_norm(y, kind)),
                  (f"{tag}(AB)^a {tag}(BA)^(1-a)", n_ab ** alpha * n_ba ** beta))
        rep.chain((f"{tag}((A^(1/2) o B^(1/2))^2)", operator_norm(g @ g, kind)),
                  (f"{tag}(Y_1/2)", operator_norm(y_half, kind)),
                  (f"{tag}(AB)^(1/2) {tag}(BA)^(1/2)", math.sqrt(n_ab * n_ba)))
    w_ab, w_ba = numerical_radius(ab), numerical_radius(ba)
    rep.chain(("w(X_a)", numerical_radius(x)), ("w(Y_a)", numerical_radius(y)),
              ("w(AB)^a w(BA)^(1-a)", w_ab ** alpha * w_ba ** beta))
    rep.chain(("w((A^(1/2) o B^(1/2))^2)", numerical_radius(g @ g)),
              ("w(Y_1/2)", numerical_radius(y_half)),
              ("w(AB)^(1/2) w(BA)^(1/2)", math.sqrt(w_ab * w_ba)))
    return rep


def search_numrad_violation(budget: int = 1000, n: int = 2, m: int = 2, seed: int = 0,
                            weights: Sequence[float] | None = None,
                            density: float = 0.5) -> dict | None:
    """Look for ``w(B_1...B_m) > prod_j w(P_j)^(a_j)`` with weights summing past 1.

    Draws random instances (and, unless ``weights`` is given, random weights
    with sum in [1, 2]) and returns the first violation, or ``None``.  Sparse
    draws matter: a zero row makes the products nilpotent-like, which is
    where the bound breaks (e.g. ``A = B = [[e, 1], [0, 0]]``, weights (1, 1)).
    """
    rng = np.random.default_rng(seed)
    for trial in range(budget):
        mats = [_random_matrix(rng, n, density) for _ in range(m)]
        if weights is None:
            w = WeightVector(_random_weights(rng, m, Constraint.SUM_AT_LEAST_ONE),
                             Constraint.SUM_AT_LEAST_ONE)
        else:
            w = WeightVector(weights, Constraint.SUM_AT_LEAST_ONE)
        bprod, ps, _ = _cyclic_terms(mats, w)
        lhs = numerical_radius(bprod)
        rhs = _wprod([numerical_radius(p) for p in ps], w.weights)
        if lhs > rhs * (1 + 1e-9) + 1e-12:
            return {"trial": trial, "weights": list(w.weights),
                    "mats": [a.tolist() for a in mats], "lhs": lhs, "rhs": rhs}
    return None


# --------------------------------------------------------------------------
# Bounds specific to l2: Gram matrices and alternating transposes.

def check_thm41(mats, w: WeightVector, *, config: TrialConfig | None = None):
    _require(w, Constraint.SUM_ONE)
    mats = _mats(mats, len(w))
    m = len(mats)
    rep = _new_report("thm41", config, weights=w.weights)
    eq = [1 / m] * m
    s = [gram_S(a) for a in mats]
    q = [cyclic_product_P(s, j) for j in range(1, m + 1)]
    rep.chain(("|o_j A_j^(1/m)|_2", operator_norm(hadamard_mean(mats, eq))),
              ("rho(o_j S_j^(1/m))^(1/2)", math.sqrt(rho(hadamard_mean(s, eq)))),
              ("rho(o_j Q_j^(1/m))^(1/2m)", _power(rho(hadamard_mean(q, eq)), 1 / (2 * m))),
              ("rho(S_1...S_m)^(1/2m)", _power(rho(product(s)), 1 / (2 * m))))
    _norm_ref(rep, mats, s, w)
    return rep


def _norm_ref(rep, mats, s, w):
    rep.chain(("|o_j A_j^(a_j)|_2", operator_norm(weighted_geometric_mean(mats, w))),
              ("rho(o_j S_j^(a_j))^(1/2)", math.sqrt(rho(weighted_geometric_mean(s, w)))),
              ("prod_j |A_j|_2^a_j", _wprod([operator_norm(a) for a in mats], w.weights)))


def check_thm42(mats, w: WeightVector, *, config: TrialConfig | None = None):
    _require(w, Constraint.SUM_AT_LEAST_ONE)
    mats = _mats(mats, len(w))
    rep = _new_report("thm42", config, weights=w.weights)
    _norm_ref(rep, mats, [gram_S(a) for a in mats], w)
    return rep


def check_cor43(a, b, alpha: float = 0.5, beta: float | None = None, *,
                config: TrialConfig | None = None):
    """Two-operator Gram-matrix bounds; ``beta`` enables the ``alpha + beta >= 1`` chain."""
    if not 0 <= alpha <= 1:
        raise ConfigurationError(f"alpha must be in [0, 1], got {alpha}")
    if beta is not None and not (beta > 0 and alpha + beta >= 1 - 1e-12):
        raise ConfigurationError(f"need beta > 0 and alpha + beta >= 1, got {alpha}, {beta}")
    a, b = _mats([a, b], 2)
    rep = _new_report("cor43", config, alpha=alpha, beta=beta)
    sa, sb = gram_S(a), gram_S(b)
    na, nb = operator_norm(a), operator_norm(b)
    sab = sa @ sb
    rep.chain(("|A^(1/2) o B^(1/2)|_2", operator_norm(np.sqrt(a * b))),
              ("rho(S_A^(1/2) o S_B^(1/2))^(1/2)", math.sqrt(rho(np.sqrt(sa * sb)))),
              ("rho((S_A S_B)^(1/2) o (S_B S_A)^(1/2))^(1/4)",
               _power(rho(np.sqrt(sab * (sb @ sa))), 0.25)),
              ("rho(S_A S_B)^(1/4)", _power(rho(sab), 0.25)))
    rep.add("|A B^T|_2^(1/2)", math.sqrt(operator_norm(a @ b.T)))
    rep.equal("rho(S_A S_B)^(1/4)", "|A B^T|_2^(1/2)")
    rep.chain(("|A B^T|_2^(1/2)", rep.value("|A B^T|_2^(1/2)")),
              ("|A|_2^(1/2) |B|_2^(1/2)", math.sqrt(na * nb)))
    rep.chain(("|A^(a) o B^(1-a)|_2",
               operator_norm(hadamard_power(a, alpha) * hadamard_power(b, 1 - alpha))),
              ("rho(S_A^(a) o S_B^(1-a))^(1/2)",
               math.sqrt(rho(hadamard_power(sa, alpha) * hadamard_power(sb, 1 - alpha)))),
              ("|A|_2^a |B|_2^(1-a)", na ** alpha * nb ** (1 - alpha)))
    if beta is not None and alpha > 0:
        rep.chain(("|A^(a) o B^(b)|_2",
                   operator_norm(hadamard_power(a, alpha) * hadamard_power(b, beta))),
                  ("rho(S_A^(a) o S_B^(b))^(1/2)",
                   math.sqrt(rho(hadamard_power(sa, alpha) * hadamard_power(sb, beta)))),
                  ("|A|_2^a |B|_2^b", na ** alpha * nb ** beta))
    return rep


def check_thm44(a, b, alpha: float = 0.5, *, config: TrialConfig | None = None):
    if not alpha >= 0.5:
        raise ConfigurationError(f"alpha must be >= 1/2, got {alpha}")
    a, b = _mats([a, b], 2)
    rep = _new_report("thm44", config, alpha=alpha)
    atb, bta = a.T @ b, b.T @ a
    r_atb = rho(atb)
    rep.chain(("|A^(1/2) o B^(1/2)|_2", operator_norm(np.sqrt(a * b))),
              ("rho((A^T B)^(1/2) o (B^T A)^(1/2))^(1/2)",
               math.sqrt(rho(np.sqrt(atb) * np.sqrt(bta)))),
              ("rho(A^T B)^(1/2)", math.sqrt(r_atb)))
    rep.add("rho(A B^T)^(1/2)", math.sqrt(rho(a @ b.T)))
    rep.equal("rho(A^T B)^(1/2)", "rho(A B^T)^(1/2)")
    rep.chain(("rho(A B^T)^(1/2)", rep.value("rho(A B^T)^(1/2)")),
              ("|A B^T|_2^(1/2)", math.sqrt(operator_norm(a @ b.T))),
              ("|A|_2^(1/2) |B|_2^(1/2)", math.sqrt(operator_norm(a) * operator_norm(b))))
    rep.chain(("|A^(a) o B^(a)|_2",
               operator_norm(hadamard_power(a, alpha) * hadamard_power(b, alpha))),
              ("rho((A^T B)^(a) o (B^T A)^(a))^(1/2)",
               math.sqrt(rho(hadamard_power(atb, alpha) * hadamard_power(bta, alpha)))),
              ("rho(A^T B)^a", r_atb ** alpha))
    return rep


def check_thm45_47(mats, alpha: float | None = None, *, config: TrialConfig | None = None):
    """Alternating-transpose bounds for ``|o_j A_j^(alpha)|_2`` with alpha >= 1/m."""
    mats = _mats(mats)
    m = len(mats)
    alpha = 1 / m if alpha is None else alpha
    if alpha < 1 / m - 1e-12:
        raise ConfigurationError(f"alpha must be >= 1/{m}, got {alpha}")
    rep = _new_report("thm4547", config, alpha=alpha)
    lhs = operator_norm(hadamard_mean(mats, [alpha] * m))
    if m % 2 == 0:
        t1 = alternating_product(mats, 1, m, transpose_first=True)
        n1 = alternating_product(mats, 1, m, transpose_first=False)
        rev = alternating_product(mats[::-1], 1, m, transpose_first=False)
        rep.chain(("|o_j A_j^(a)|_2", lhs),
                  ("rho(B_a)^(1/m)", _power(rho(build_B_alpha(mats, alpha)), 1 / m)),
                  ("(rho(A_1^T A_2...A_m) rho(A_m A_(m-1)^T...A_1^T))^(a/2)",
                   _power(rho(t1) * rho(rev), alpha / 2)))
        rep.add("rho(A_1 A_2^T...A_m^T)", rho(n1))
        rep.add("rho(A_m A_(m-1)^T...A_1^T)", rho(rev))
        rep.equal("rho(A_1 A_2^T...A_m^T)", "rho(A_m A_(m-1)^T...A_1^T)")
    else:
        npat = alternating_product(mats, 1, 2 * m, transpose_first=False)
        rep.chain(("|o_j A_j^(a)|_2", lhs),
                  ("rho(C_a)^(1/2m)", _power(rho(build_C_alpha(mats, alpha)), 1 / (2 * m))),
                  ("rho(A_1 A_2^T...A_m^T)^(a/2)", _power(rho(npat), alpha / 2)))
    return rep


def _triple_c(a1, a2, a3, alpha):
    t = lambda x: x.T  # noqa: E731
    f1 = t(a1) @ a2 @ t(a3) @ a1 @ t(a2) @ a3
    f2 = t(a2) @ a3 @ t(a1) @ a2 @ t(a3) @ a1
    f3 = t(a3) @ a1 @ t(a2) @ a3 @ t(a1) @ a2
    return hadamard_mean([f1, f2, f3], [alpha] * 3)


def check_cor48(a1, a2, a3, alpha: float = 1 / 3, *, config: TrialConfig | None = None):
    if alpha < 1 / 3 - 1e-12:
        raise ConfigurationError(f"alpha must be >= 1/3, got {alpha}")
    a1, a2, a3 = _mats([a1, a2, a3], 3)
    rep = _new_report("cor48", config, alpha=alpha)
    right = a1 @ a2.T @ a3 @ a1.T @ a2 @ a3.T
    rep.chain(("|A_1^(a) o A_2^(a) o A_3^(a)|_2",
               operator_norm(hadamard_mean([a1, a2, a3], [alpha] * 3))),
              ("rho(C_a)^(1/6)", _power(rho(_triple_c(a1, a2, a3, alpha)), 1 / 6)),
              ("rho(A_1 A_2^T A_3 A_1^T A_2 A_3^T)^(a/2)", _power(rho(right), alpha / 2)))
    return rep


def check_cor49_jordan(a, b, alpha: float = 1 / 3, *, config: TrialConfig | None = None):
    """Lower bound for the Jordan triple product norm ``|ABA|_2``."""
    if alpha < 1 / 3 - 1e-12:
        raise ConfigurationError(f"alpha must be >= 1/3, got {alpha}")
    a, b = _mats([a, b], 2)
    rep = _new_report("cor49", config, alpha=alpha)
    aba = a @ b @ a
    n_aba = operator_norm(aba)
    rep.chain(("|A^(a) o (B^T)^(a) o A^(a)|_2",
               operator_norm(hadamard_mean([a, b.T, a], [alpha] * 3))),
              ("rho(C_a)^(1/6)", _power(rho(_triple_c(a, b.T, a, alpha)), 1 / 6)),
              ("|ABA|_2^a", n_aba ** alpha))
    rep.add("rho(ABA (ABA)^T)^(a/2)", _power(rho(aba @ aba.T), alpha / 2))
    rep.equal("rho(ABA (ABA)^T)^(a/2)", "|ABA|_2^a")
    return rep


COUNTER_A = np.array([[0.0, 1.0], [0.0, 1.0]])
COUNTER_B = np.array([[1.0, 1.0], [0.0, 0.0]])


def run_counterexample(alpha: float = 1 / 3, a=None, b=None) -> InequalityReport:
    """The naive bound ``|A^(a) o B^(a) o A^(a)| <= |ABA|^a`` on its standard
    counterexample.  The returned report is expected to FAIL."""
    a = COUNTER_A if a is None else as_nonnegative(a)
    b = COUNTER_B if b is None else as_nonnegative(b)
    rep = _new_report("counterexample", None, alpha=alpha)
    lhs = operator_norm(hadamard_mean([a, b, a], [alpha] * 3))
    rep.chain(("|A^(a) o B^(a) o A^(a)|_2", lhs),
              ("|ABA|_2^a", operator_norm(a @ b @ a) ** alpha))
    return rep


# --------------------------------------------------------------------------
# Random instances and the sweep runner.

def _random_matrix(rng: np.random.Generator, n: int, density: float) -> np.ndarray:
    vals = rng.random((n, n))
    mask = rng.random((n, n)) < density
    return vals * mask


def _random_weights(rng, m: int, mode: Constraint) -> tuple[float, ...]:
    e = rng.exponential(size=m) + 1e-300
    w = e / e.sum()
    if mode is Constraint.SUM_AT_LEAST_ONE:
        w = w * rng.uniform(1.0, 2.0)
    return tuple(float(x) for x in w)


def _exponent(rng, lower: float) -> float:
    # A quarter of the draws sit exactly on the boundary exponent.
    return lower if rng.random() < 0.25 else lower + float(rng.uniform(0.0, 1.0))


def _sample_grid(rng, cfg, native):
    k = int(rng.integers(1, 4))
    grid = [[_random_matrix(rng, cfg.n, cfg.density) for _ in range(cfg.m)] for _ in range(k)]
    return (grid, WeightVector(_random_weights(rng, cfg.m, cfg.weight_mode), native)), {}


def _sample_weighted(rng, cfg, native):
    # Draws follow the requested mode but carry the suite's own constraint
    # tag; a sum-one draw is a valid member of the sum >= 1 class.
    mats = [_random_matrix(rng, cfg.n, cfg.density) for _ in range(cfg.m)]
    return (mats, WeightVector(_random_weights(rng, cfg.m, cfg.weight_mode), native)), {}


def _sample_mats(count: int | None = None, alpha_lower: Callable[[int], float] | None = None):
    def sample(rng, cfg, native):
        mats = [_random_matrix(rng, cfg.n, cfg.density) for _ in range(count or cfg.m)]
        kwargs = {}
        if alpha_lower is not None:
            kwargs["alpha"] = _exponent(rng, alpha_lower(len(mats)))
        # Fixed-arity checkers take the operators as separate arguments.
        return (tuple(mats) if count else (mats,)), kwargs
    return sample


def _sample_cor35(rng, cfg, native):
    a, b = (_random_matrix(rng, cfg.n, cfg.density) for _ in range(2))
    return (a, b), {"alpha": float(rng.uniform(0, 1))}


def _sample_cor43(rng, cfg, native):
    a, b = (_random_matrix(rng, cfg.n, cfg.density) for _ in range(2))
    alpha = float(rng.uniform(0, 1))
    beta = (1 - alpha) + float(rng.uniform(0, 0.5)) + 1e-9
    return (a, b), {"alpha": alpha, "beta": beta}


def _sample_jordan(rng, cfg, native):
    a, b = (_random_matrix(rng, cfg.n, cfg.density) for _ in range(2))
    return (a, b), {"alpha": _exponent(rng, 1 / 3)}


def _reciprocal(m: int) -> float:
    return 1 / m


def _half(m: int) -> float:
    return 0.5


@dataclass(frozen=True)
class Suite:
    name: str
    checker: Callable
    sample: Callable
    weights: Constraint | None = None
    arity: int | None = None


SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("thm21", check_thm21, _sample_grid, Constraint.SUM_ONE),
    Suite("thm23", check_thm23_refined, _sample_grid, Constraint.SUM_ONE),
    Suite("thm24", check_thm24_sum_ge1, _sample_grid, Constraint.SUM_AT_LEAST_ONE),
    Suite("thm31", check_thm31, _sample_weighted, Constraint.SUM_ONE),
    Suite("thm32", check_thm32, _sample_weighted, Constraint.SUM_ONE),
    Suite("cor33", check_cor33, _sample_mats()),
    Suite("cor35", check_cor35, _sample_cor35, arity=2),
    Suite("thm36", check_thm36, _sample_weighted, Constraint.SUM_AT_LEAST_ONE),
    Suite("thm41", check_thm41, _sample_weighted, Constraint.SUM_ONE),
    Suite("thm42", check_thm42, _sample_weighted, Constraint.SUM_AT_LEAST_ONE),
    Suite("cor43", check_cor43, _sample_cor43, arity=2),
    Suite("thm44", check_thm44, _sample_mats(2, _half), arity=2),
    Suite("thm4547", check_thm45_47, _sample_mats(None, _reciprocal)),
    Suite("cor48", check_cor48, _sample_mats(3, _reciprocal), arity=3),
    Suite("cor49", check_cor49_jordan, _sample_jordan, arity=2),
]}


@dataclass(frozen=True)
class Sweep:
    """A batch of seeded random trials across dimensions and densities."""

    seed: int = 0
    trials: int = 100
    dims: tuple[int, int] = (2, 8)
    ms: tuple[int, int] = (2, 5)
    densities: tuple[float, ...] = (0.3, 0.7, 1.0)
    weight_mode: Constraint | None = None
    rel_tol: float = REL_TOL
    abs_tol: float = ABS_TOL

    def __post_init__(self):
        lo, hi = self.dims
        if not 1 <= lo <= hi:
            raise ConfigurationError(f"bad dimension range {self.dims}")
        lo, hi = self.ms
        if not 1 <= lo <= hi:
            raise ConfigurationError(f"bad operator-count range {self.ms}")
        if self.trials < 0:
            raise ConfigurationError("trials must be >= 0")
        if not self.densities or not all(0 < d <= 1 for d in self.densities):
            raise ConfigurationError(f"densities must lie in (0, 1], got {self.densities}")


def resolve_weight_mode(suite: Suite, requested: Constraint | None) -> Constraint | None:
    if suite.weights is None:
        return None
    if requested is None or requested is Constraint.SUM_ONE:
        return requested or suite.weights
    if suite.weights is Constraint.SUM_ONE:
        raise ConfigurationError(f"suite {suite.name} needs weights summing to 1")
    return requested


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None


def trial_configs(name: str, sweep: Sweep) -> list[TrialConfig]:
    """Per-trial configs; each depends only on (sweep seed, suite name, index)."""
    suite = get_suite(name)
    mode = resolve_weight_mode(suite, sweep.weight_mode)
    tag = zlib.crc32(name.encode())
    out = []
    for t in range(sweep.trials):
        ss = np.random.SeedSequence([sweep.seed, tag, t])
        rng = np.random.default_rng(ss)
        n = int(rng.integers(sweep.dims[0], sweep.dims[1] + 1))
        m = suite.arity or int(rng.integers(sweep.ms[0], sweep.ms[1] + 1))
        density = float(sweep.densities[int(rng.integers(len(sweep.densities)))])
        seed = int(ss.generate_state(1, dtype=np.uint64)[0])
        out.append(TrialConfig(seed, n, m, density, mode, sweep.rel_tol, sweep.abs_tol))
    return out


def run_trial(name: str, cfg: TrialConfig) -> InequalityReport:
    """Rebuild the instance for ``cfg`` and check it."""
    suite = get_suite(name)
    rng = np.random.default_rng(cfg.seed)
    args, kwargs = suite.sample(rng, cfg, suite.weights)
    return suite.checker(*args, config=cfg, **kwargs)


def _run_star(job):
    return run_trial(*job)


def run_sweep(names: Sequence[str], sweep: Sweep, workers: int | None = None) -> list[InequalityReport]:
    """All trials of all named suites, in a schedule-independent order."""
    jobs = [(name, cfg) for name in names for cfg in trial_configs(name, sweep)]
    workers = workers or default_workers()
    if workers <= 1 or len(jobs) < 2:
        return [_run_star(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_star, jobs, chunksize=max(1, len(jobs) // (8 * workers))))


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("HML_THREADS", "1")))
    except ValueError:
        raise ConfigurationError("HML_THREADS must be an integer") from None

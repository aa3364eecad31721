"""Positive kernels on [0, 1]^2 discretized by the uniform midpoint rule.

``M_ij = a(x_i, x_j) * h`` with ``x_i = (i - 1/2) h`` and ``h = 1/n``.  With
equal quadrature weights, ``(a^s b^t) h = (a h)^s (b h)^t`` whenever
``s + t = 1``, so Hadamard weighted geometric means of kernels discretize to
the same means of the matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .matrix import MAX_DIM, ConfigurationError, Constraint, WeightVector, as_nonnegative
from .report import InequalityReport
from .suites import DEFAULT_CONFIG, get_suite


def _gauss(x, y, width=1.0):
    return np.exp(-((x - y) / width) ** 2)


def _rational(x, y, c=1.0):
    return 1.0 / (c + x + y)


def _bilinear(x, y, scale=1.0):
    return scale * x * y


def _constant(x, y, c=1.0):
    return np.full(np.broadcast(x, y).shape, float(c))


KERNELS: dict[str, Callable] = {
    "gauss": _gauss,
    "rational": _rational,
    "bilinear": _bilinear,
    "constant": _constant,
}


@dataclass(frozen=True)
class KernelSpec:
    name: str
    params: tuple[float, ...] = ()
    grid_n: int = 16

    def __post_init__(self):
        if self.name not in KERNELS:
            raise ConfigurationError(
                f"unknown kernel {self.name!r}; choose from {', '.join(KERNELS)}")
        if not 2 <= self.grid_n <= MAX_DIM:
            raise ConfigurationError(f"grid_n must be in 2..{MAX_DIM}, got {self.grid_n}")
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))

    def at(self, grid_n: int) -> "KernelSpec":
        return KernelSpec(self.name, self.params, grid_n)

    def __call__(self, x, y):
        return KERNELS[self.name](x, y, *self.params)


def midpoints(n: int) -> np.ndarray:
    return (np.arange(n) + 0.5) / n


def discretize_function(kernel: Callable, n: int) -> np.ndarray:
    """Midpoint-rule matrix of an arbitrary kernel callable."""
    if n < 2:
        raise ConfigurationError(f"grid size must be >= 2, got {n}")
    x = midpoints(n)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        vals = np.asarray(kernel(x[:, None], x[None, :]), dtype=np.float64)
    if vals.shape != (n, n):
        vals = np.broadcast_to(vals, (n, n))
    if np.any(vals < 0) or not np.all(np.isfinite(vals)):
        raise ConfigurationError("kernel is negative or non-finite at a grid node")
    return as_nonnegative(vals / n)


def discretize(spec: KernelSpec) -> np.ndarray:
    return discretize_function(spec, spec.grid_n)


def parse_kernel(text: str) -> KernelSpec:
    """``name`` or ``name:p1:p2``, e.g. ``gauss:0.5``."""
    name, *params = text.strip().split(":")
    try:
        values = tuple(float(p) for p in params)
    except ValueError as exc:
        raise ConfigurationError(f"bad kernel parameters in {text!r}") from exc
    return KernelSpec(name, values)


def _suite_call(name: str, mats: list[np.ndarray], params: dict):
    """Argument list for running suite ``name`` on the discretized kernels."""
    suite = get_suite(name)
    m = len(mats)
    if suite.arity and suite.arity != m:
        raise ConfigurationError(f"suite {name} needs {suite.arity} kernels, got {m}")
    kwargs = dict(params)
    weights = kwargs.pop("weights", None)
    if suite.weights is Constraint.SUM_ONE:
        w = WeightVector(weights or (1 / m,) * m, Constraint.SUM_ONE)
    elif suite.weights is Constraint.SUM_AT_LEAST_ONE:
        w = WeightVector(weights or (1.0,) * m, Constraint.SUM_AT_LEAST_ONE)
    if name in ("thm21", "thm23", "thm24"):
        # Two-row grid: the kernels and their reversal.
        return (suite.checker, ([mats, mats[::-1]], w), kwargs)
    if suite.weights is not None:
        return (suite.checker, (mats, w), kwargs)
    if suite.arity:
        return (suite.checker, tuple(mats), kwargs)
    return (suite.checker, (mats,), kwargs)


def refine_and_check(kernels: Sequence[KernelSpec], suite: str, grids: Sequence[int],
                     params: dict | None = None) -> list[InequalityReport]:
    """Run checker ``suite`` on the kernels discretized at each grid size."""
    if not kernels:
        raise ConfigurationError("no kernels given")
    reports = []
    for n in grids:
        mats = [discretize(k.at(n)) for k in kernels]
        checker, args, kwargs = _suite_call(suite, mats, params or {})
        rep = checker(*args, config=DEFAULT_CONFIG, **kwargs)
        rep.digest = {"suite": suite, "grid_n": n,
                      "kernels": [k.name + "".join(f":{p:g}" for p in k.params) for k in kernels],
                      **{k: v for k, v in rep.digest.items()
                         if k not in ("suite", "seed", "n", "m", "density", "weight_mode")}}
        reports.append(rep)
    return reports


def convergence_trend(reports: Sequence[InequalityReport], factor: float = 1.1,
                      floor: float = 1e-12, all_levels: bool = False) -> dict[str, bool]:
    """For each quantity, whether the change shrinks under refinement.

    With values ``q_0, ..., q_L`` on grids of increasing size, requires
    ``|q_L - q_(L-1)| <= factor * |q_(L-1) - q_(L-2)| + floor * max(1, |q_L|)``.
    ``all_levels`` asks the same of every consecutive triple; the l1 and
    l-infinity norms are maxima over grid nodes and can move irregularly on
    coarse grids, so that stricter form is off by default.  ``floor`` absorbs
    rounding once a quantity has converged.
    """
    if len(reports) < 3:
        raise ConfigurationError("need at least three refinement levels")
    out = {}
    for label in reports[0].labels():
        q = [r.value(label) for r in reports]
        diffs = [abs(b - a) for a, b in zip(q, q[1:])]
        pairs = list(zip(diffs, diffs[1:]))
        if not all_levels:
            pairs = pairs[-1:]
        out[label] = all(d1 <= factor * d0 + floor * max(1.0, abs(q[-1])) for d0, d1 in pairs)
    return out


def trend_passed(reports: Sequence[InequalityReport], **kw) -> bool:
    return all(convergence_trend(reports, **kw).values())


def riemann_bilinear_rho(n: int) -> float:
    """Closed form of ``rho`` for the discretized ``x*y`` kernel: ``h * sum x_i^2``."""
    x = midpoints(n)
    return float(math.fsum(x * x) / n)

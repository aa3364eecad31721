"""Dense nonnegative matrices and the entrywise / product constructions.

Matrices are plain ``float64`` ndarrays flagged read-only.  Every public
function validates its inputs through :func:`as_nonnegative` and returns a
fresh read-only array, so values can be shared freely between threads.

Indices that name an operator in a list (``cyclic_factor_B``,
``cyclic_product_P``) are 1-based to mirror the indexed formulas they build.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

MAX_DIM = 256
SUM_TOL = 1e-12


class ConfigurationError(ValueError):
    """Inputs do not satisfy the preconditions of an operation."""


def as_nonnegative(a) -> np.ndarray:
    """Validate ``a`` as a square nonnegative matrix and return it read-only."""
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ConfigurationError(f"matrix must be square, got shape {arr.shape}")
    n = arr.shape[0]
    if n < 1 or n > MAX_DIM:
        raise ConfigurationError(f"dimension must be in 1..{MAX_DIM}, got {n}")
    if not np.all(np.isfinite(arr)):
        raise ConfigurationError("matrix has non-finite entries")
    if np.any(arr < 0):
        raise ConfigurationError("matrix has negative entries")
    if arr.flags.writeable:
        arr = arr.copy()
        arr.setflags(write=False)
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _same_dim(*mats: np.ndarray) -> None:
    n = mats[0].shape[0]
    for m in mats[1:]:
        if m.shape[0] != n:
            raise ConfigurationError(f"dimension mismatch: {n} vs {m.shape[0]}")


class Constraint(enum.Enum):
    SUM_ONE = "sum1"
    SUM_AT_LEAST_ONE = "sumge1"


@dataclass(frozen=True)
class WeightVector:
    """Positive Hadamard exponents together with the constraint they obey."""

    weights: tuple[float, ...]
    constraint: Constraint = Constraint.SUM_ONE

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise ConfigurationError("weight vector is empty")
        if any(not np.isfinite(x) or x <= 0 for x in w):
            raise ConfigurationError(f"weights must be positive, got {w}")
        total = sum(w)
        if self.constraint is Constraint.SUM_ONE and abs(total - 1) > SUM_TOL:
            raise ConfigurationError(f"weights must sum to 1, got {total!r}")
        if self.constraint is Constraint.SUM_AT_LEAST_ONE and total < 1 - SUM_TOL:
            raise ConfigurationError(f"weights must sum to at least 1, got {total!r}")

    @classmethod
    def equal(cls, m: int) -> "WeightVector":
        return cls((1.0 / m,) * m, Constraint.SUM_ONE)

    @property
    def total(self) -> float:
        return sum(self.weights)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)


def identity(n: int) -> np.ndarray:
    if not 1 <= n <= MAX_DIM:
        raise ConfigurationError(f"dimension must be in 1..{MAX_DIM}, got {n}")
    return _frozen(np.eye(n))


def transpose(a) -> np.ndarray:
    return _frozen(as_nonnegative(a).T.copy())


def matmul(a, b) -> np.ndarray:
    a, b = as_nonnegative(a), as_nonnegative(b)
    _same_dim(a, b)
    return _frozen(a @ b)


def product(mats: Sequence) -> np.ndarray:
    """Ordinary product ``mats[0] @ mats[1] @ ...``."""
    if not mats:
        raise ConfigurationError("empty product")
    mats = [as_nonnegative(m) for m in mats]
    _same_dim(*mats)
    out = mats[0]
    for m in mats[1:]:
        out = out @ m
    return _frozen(np.array(out, copy=True))


def hadamard_product(a, b) -> np.ndarray:
    a, b = as_nonnegative(a), as_nonnegative(b)
    _same_dim(a, b)
    return _frozen(a * b)


def hadamard_power(a, alpha: float) -> np.ndarray:
    """Entrywise ``a_ij ** alpha``.

    IEEE ``pow`` already gives ``0 ** 0 == 1`` and ``0 ** alpha == 0`` for
    ``alpha > 0``, which is exactly the convention needed; no flooring.
    """
    if not alpha >= 0:
        raise ConfigurationError(f"Hadamard exponent must be >= 0, got {alpha}")
    return _frozen(np.power(as_nonnegative(a), float(alpha)))


def hadamard_mean(mats: Sequence, exponents: Sequence[float]) -> np.ndarray:
    """Entrywise ``prod_j mats[j] ** exponents[j]`` with no weight constraint."""
    if len(mats) == 0:
        raise ConfigurationError("empty matrix list")
    if len(mats) != len(exponents):
        raise ConfigurationError(
            f"{len(mats)} matrices but {len(exponents)} exponents")
    mats = [as_nonnegative(m) for m in mats]
    _same_dim(*mats)
    out = np.ones_like(mats[0])
    for m, e in zip(mats, exponents):
        if not e >= 0:
            raise ConfigurationError(f"Hadamard exponent must be >= 0, got {e}")
        out *= np.power(m, float(e))
    return _frozen(out)


def weighted_geometric_mean(mats: Sequence, w: WeightVector) -> np.ndarray:
    """Hadamard weighted geometric mean ``A_1^(w_1) o ... o A_m^(w_m)``."""
    return hadamard_mean(mats, w.weights)


def _check_index(i: int, m: int) -> None:
    if not 1 <= i <= m:
        raise ConfigurationError(f"index {i} out of range 1..{m}")


def cyclic_factor_B(mats: Sequence, w: WeightVector, i: int) -> np.ndarray:
    """``B_i = A_i^(w_1) o A_(i+1)^(w_2) o ... o A_(i-1)^(w_m)`` (cyclic)."""
    m = len(mats)
    if len(w) != m:
        raise ConfigurationError(f"{m} matrices but {len(w)} weights")
    _check_index(i, m)
    rotated = [mats[(i - 1 + t) % m] for t in range(m)]
    return hadamard_mean(rotated, w.weights)


def cyclic_product_P(mats: Sequence, j: int) -> np.ndarray:
    """``P_j = A_j ... A_m A_1 ... A_(j-1)``."""
    m = len(mats)
    _check_index(j, m)
    return product([mats[(j - 1 + t) % m] for t in range(m)])


def gram_S(a) -> np.ndarray:
    """``A^T A``, symmetrized so that it is bitwise symmetric."""
    a = as_nonnegative(a)
    s = a.T @ a
    return _frozen((s + s.T) / 2)


def alternating_product(mats: Sequence, start: int, length: int,
                        transpose_first: bool = True) -> np.ndarray:
    """Cyclic product of ``length`` factors from ``mats[start-1]`` onward,
    transposing every other factor (the first one iff ``transpose_first``)."""
    m = len(mats)
    _check_index(start, m)
    factors = []
    for t in range(length):
        a = as_nonnegative(mats[(start - 1 + t) % m])
        factors.append(a.T if (t % 2 == 0) == transpose_first else a)
    return product(factors)


def alternating_factors(mats: Sequence) -> list[np.ndarray]:
    """The m factors whose Hadamard mean gives ``B`` (m even) or ``C`` (m odd).

    Factor k starts at ``A_k^T`` and alternates transposes; its length is m
    for even m and 2m for odd m, so the pattern closes up cyclically.
    """
    m = len(mats)
    length = m if m % 2 == 0 else 2 * m
    return [alternating_product(mats, k, length) for k in range(1, m + 1)]


def build_B_alpha(mats: Sequence, alpha: float) -> np.ndarray:
    m = len(mats)
    if m < 2 or m % 2:
        raise ConfigurationError(f"B needs an even number (>= 2) of matrices, got {m}")
    if alpha < 1.0 / m - SUM_TOL:
        raise ConfigurationError(f"exponent must be >= 1/{m}, got {alpha}")
    return hadamard_mean(alternating_factors(mats), [alpha] * m)


def build_C_alpha(mats: Sequence, alpha: float) -> np.ndarray:
    m = len(mats)
    if m < 1 or m % 2 == 0:
        raise ConfigurationError(f"C needs an odd number of matrices, got {m}")
    if alpha < 1.0 / m - SUM_TOL:
        raise ConfigurationError(f"exponent must be >= 1/{m}, got {alpha}")
    return hadamard_mean(alternating_factors(mats), [alpha] * m)


def build_B_even(mats: Sequence) -> np.ndarray:
    return build_B_alpha(mats, 1.0 / max(len(mats), 1))


def build_C_odd(mats: Sequence) -> np.ndarray:
    return build_C_alpha(mats, 1.0 / max(len(mats), 1))


def entrywise_leq(a, b, tol: float = 1e-10) -> tuple[bool, float]:
    """Check ``a <= b`` entrywise, allowing ``tol * max(1, b_ij)`` per entry.

    Returns the verdict and the worst raw excess ``max(a_ij - b_ij, 0)``.
    """
    a, b = as_nonnegative(a), as_nonnegative(b)
    _same_dim(a, b)
    excess = a - b
    ok = bool(np.all(excess <= tol * np.maximum(1.0, b)))
    return ok, float(max(excess.max(), 0.0))

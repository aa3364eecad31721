"""Spectral radius, operator norms and numerical radius of nonnegative matrices.

The spectral radius is computed per irreducible diagonal block of the
Frobenius normal form.  A nonnegative matrix is permutation-similar to a
block triangular matrix whose diagonal blocks are the strongly connected
components of its nonzero pattern, and ``rho(A)`` is the largest ``rho`` over
those blocks.  Inside an irreducible block the Perron root is simple and has a
strictly positive eigenvector, so a LAPACK eigenvector followed (if needed) by
shifted power iteration converges, and the Collatz-Wielandt ratios
``min (Bx)_i/x_i <= rho(B) <= max (Bx)_i/x_i`` certify the value.

Zero structure survives floating point products of nonnegative matrices
exactly, so nilpotent and reducible inputs are recognised exactly rather
than approximated through a perturbation.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np

from .matrix import as_nonnegative

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-11
MAX_ITER = 50_000


@dataclass(frozen=True)
class SpectralEstimate:
    value: float
    cw_lower: float
    cw_upper: float
    iterations: int
    epsilon_used: float
    converged: bool

    def __float__(self):
        return self.value


class NormKind(enum.Enum):
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"


def strong_components(a: np.ndarray) -> list[np.ndarray]:
    """Index arrays of the strongly connected components of ``a > 0``."""
    n = a.shape[0]
    reach = ((a > 0) | np.eye(n, dtype=bool)).astype(np.float64)
    span = 1
    while span < n:
        reach = ((reach @ reach) > 0).astype(np.float64)
        span *= 2
    mutual = (reach > 0) & (reach.T > 0)
    label = np.full(n, -1)
    comps = []
    for i in range(n):
        if label[i] < 0:
            members = np.flatnonzero(mutual[i])
            label[members] = len(comps)
            comps.append(members)
    return comps


def _cw_bracket(b: np.ndarray, x: np.ndarray) -> tuple[float, float]:
    r = (b @ x) / x
    return float(r.min()), float(r.max())


def _irreducible_root(b: np.ndarray, tol: float, max_iter: int):
    """Perron root of an irreducible block of size >= 2."""
    if np.array_equal(b, b.T):
        vals, vecs = np.linalg.eigh(b)
        idx = len(vals) - 1
        lam, x = float(vals[idx]), np.abs(vecs[:, idx])
    else:
        vals, vecs = np.linalg.eig(b)
        idx = int(np.argmax(vals.real))
        lam, x = float(vals[idx].real), np.abs(vecs[:, idx].real)

    # The Perron vector is strictly positive; a LAPACK vector with zero
    # components (clustered spectrum, rounding) is replaced by the uniform start.
    if not x.min() > 0:
        x = np.ones(len(b))
    x = x / x.max()
    lo, hi = _cw_bracket(b, x)
    shift = 0.0
    it = 0
    while hi - lo > tol * max(1.0, hi) and it < max_iter:
        # b + shift*I is primitive, so plain power iteration converges.
        shift = hi
        for _ in range(8):
            x = b @ x + shift * x
            x /= x.max()
        it += 8
        lo, hi = _cw_bracket(b, x)
    converged = hi - lo <= tol * max(1.0, hi)
    if not lo <= lam <= hi:
        lam = 0.5 * (lo + hi)
    return lam, lo, hi, it, shift, converged


def spectral_radius(a, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> SpectralEstimate:
    """Perron root of a nonnegative matrix with a Collatz-Wielandt bracket.

    ``cw_lower``/``cw_upper`` are the largest block-wise lower/upper bounds;
    since ``rho`` is the maximum over blocks both remain valid for ``a``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    a = as_nonnegative(a)
    if np.all(a > 0):
        comps = [np.arange(a.shape[0])]
    else:
        comps = strong_components(a)

    value = lower = upper = 0.0
    iterations, eps, converged = 0, 0.0, True
    for idx in comps:
        if len(idx) == 1:
            d = float(a[idx[0], idx[0]])
            lam, lo, hi, it, shift, ok = d, d, d, 0, 0.0, True
        else:
            lam, lo, hi, it, shift, ok = _irreducible_root(a[np.ix_(idx, idx)], tol, max_iter)
        value, lower, upper = max(value, lam), max(lower, lo), max(upper, hi)
        iterations += it
        eps = max(eps, shift)
        converged &= ok
    if not converged:
        log.warning("spectral radius did not converge: bracket [%g, %g]", lower, upper)
    return SpectralEstimate(value, lower, upper, iterations, eps, converged)


def rho(a) -> float:
    return spectral_radius(a).value


def operator_norm(a, kind: NormKind = NormKind.L2) -> float:
    """Operator norm induced by l1 (max column sum), l2, or l-infinity (max row sum)."""
    a = as_nonnegative(a)
    kind = NormKind(kind)
    if kind is NormKind.L1:
        return float(a.sum(axis=0).max())
    if kind is NormKind.LINF:
        return float(a.sum(axis=1).max())
    s = a.T @ a
    return float(np.sqrt(spectral_radius((s + s.T) / 2).value))


def numerical_radius(a) -> float:
    """Numerical radius on l2.

    For ``a >= 0`` the supremum of ``<Af, f>`` may be taken over nonnegative
    unit ``f``, where it equals the top eigenvalue of the symmetric part
    ``(A + A^T)/2``.  That symmetric part is itself nonnegative, so its top
    eigenvalue is its Perron root.
    """
    a = as_nonnegative(a)
    return spectral_radius((a + a.T) / 2).value

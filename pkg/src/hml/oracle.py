"""Independent spectral-radius oracle for small matrices (n <= 5).

Shares nothing with :mod:`hml.spectral`: no numpy linear algebra, only exact
integer arithmetic and plain Python complex numbers.

1. Every float is a dyadic rational, so ``M = 2**K * A`` is an integer matrix.
   Its characteristic polynomial ``det(x I - M)`` is expanded exactly by
   cofactors.
2. Repeated roots are removed with an exact polynomial gcd, and a Sturm
   sequence of the square-free part locates the largest real root by
   bisection on dyadic points (all sign evaluations are exact).
3. Durand-Kerner on the square-free part bounds the complex roots; the result
   is the largest modulus found by either route, divided by ``2**K``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

MAX_N = 5
REL_WIDTH = 1e-15


def _to_integer_matrix(a) -> tuple[list[list[int]], int]:
    rows = [[float(x) for x in row] for row in a]
    ratios = [[x.as_integer_ratio() for x in row] for row in rows]
    shift = max(q.bit_length() - 1 for row in ratios for _, q in row)
    scale = 1 << shift
    return [[p * (scale // q) for p, q in row] for row in ratios], shift


# Polynomials are ascending coefficient lists.

def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _padd(p, q):
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _pmul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def charpoly(m: list[list[int]]) -> list[int]:
    """Coefficients of ``det(x I - m)`` by Laplace expansion along rows."""
    n = len(m)

    def entry(i, j):
        return [-m[i][j], 1] if i == j else [-m[i][j]]

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> tuple:
        if row == n:
            return (1,)
        total = [0]
        for k, j in enumerate(sorted(cols)):
            e = entry(row, j)
            if e == [0]:
                continue
            term = _pmul(e, list(minor(row + 1, cols - {j})))
            total = _padd(total, term if k % 2 == 0 else [-c for c in term])
        return tuple(total)

    return list(minor(0, frozenset(range(n))))


def _divmod(p, q):
    p = [Fraction(c) for c in p]
    q = [Fraction(c) for c in q]
    if len(p) < len(q):
        return [Fraction(0)], _trim(p)
    quot = [Fraction(0)] * (len(p) - len(q) + 1)
    for shift in range(len(p) - len(q), -1, -1):
        f = p[shift + len(q) - 1] / q[-1]
        quot[shift] = f
        if f:
            for i, c in enumerate(q):
                p[i + shift] -= f * c
    return _trim(quot), _trim(p[:len(q) - 1] or [Fraction(0)])


def _deriv(p):
    return _trim([i * c for i, c in enumerate(p)][1:]) if len(p) > 1 else [0]


def _gcd(p, q):
    while any(q):
        _, r = _divmod(p, q)
        p, q = q, r
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def _primitive(p) -> list[int]:
    """Scale a rational polynomial to integers by a positive factor."""
    den = lcm(*(Fraction(c).denominator for c in p))
    return [int(Fraction(c) * den) for c in p]


def squarefree(p: list[int]) -> list[int]:
    if len(p) <= 2:
        return p
    g = _gcd(p, _deriv(p))
    q, _ = _divmod(p, g)
    return _primitive(q)


def sturm_sequence(p: list[int]) -> list[list[int]]:
    seq = [p, _primitive(_deriv(p))]
    while len(seq[-1]) > 1:
        _, r = _divmod(seq[-2], seq[-1])
        if not any(r):
            break
        seq.append(_primitive([-c for c in r]))
    return seq


def _sign_at(p: list[int], num: int, den: int) -> int:
    """Sign of ``p(num/den)`` for ``den > 0``, computed exactly."""
    d = len(p) - 1
    acc = p[-1]
    dpow = 1
    for k in range(d - 1, -1, -1):
        dpow *= den
        acc = acc * num + p[k] * dpow
    return (acc > 0) - (acc < 0)


def _variations(signs) -> int:
    s = [x for x in signs if x]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _roots_above(seq, num: int, den: int, v_inf: int) -> int:
    return _variations(_sign_at(p, num, den) for p in seq) - v_inf


def largest_real_root(p: list[int]) -> Fraction | None:
    """Largest real root of a square-free integer polynomial, bisected exactly
    until the bracket is narrower than ``REL_WIDTH`` relative."""
    if len(p) == 1:
        return None
    seq = sturm_sequence(p)
    v_inf = _variations((1 if q[-1] > 0 else -1) for q in seq)
    # Cauchy bound: every root has modulus below 1 + max|p_k / p_d|.
    lead = abs(p[-1])
    bound = 1 + max(-(-abs(c) // lead) for c in p[:-1])
    if _roots_above(seq, 0, 1, v_inf) == 0:
        if p[0] == 0:
            return Fraction(0)
        lo, hi = -bound, 0
    else:
        lo, hi = 0, bound
    den = 1
    for _ in range(4000):
        if hi - lo <= REL_WIDTH * max(abs(lo), abs(hi)):
            break
        lo, hi, den = 2 * lo, 2 * hi, 2 * den
        mid = (lo + hi) // 2
        if _roots_above(seq, mid, den, v_inf) >= 1:
            lo = mid
        else:
            hi = mid
    return Fraction(lo + hi, 2 * den)


def durand_kerner(p: list[int], scale: int, iters: int = 500) -> tuple[list[complex], bool]:
    """All roots of ``p(scale * z)`` by simultaneous Weierstrass iteration.

    Returns the roots and whether the corrections fell below 1e-14 relative.
    """
    d = len(p) - 1
    if d == 0:
        return [], True
    lead = Fraction(p[-1]) * Fraction(scale) ** d
    coeffs = [float(Fraction(c) * Fraction(scale) ** k / lead) for k, c in enumerate(p)]
    radius = 1 + max(abs(c) for c in coeffs[:-1])

    def f(z):
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    z = [radius * complex(0.4, 0.9) ** k for k in range(d)]
    for _ in range(iters):
        delta = 0.0
        for i in range(d):
            denom = 1 + 0j
            for j in range(d):
                if i != j:
                    denom *= z[i] - z[j]
            if denom == 0:
                denom = 1e-300
            step = f(z[i]) / denom
            z[i] -= step
            delta = max(delta, abs(step))
        if delta <= 1e-14 * max(1.0, max(abs(w) for w in z)):
            return z, True
    return z, False


def spectral_radius_oracle(a) -> float:
    """Max modulus over the characteristic roots of a matrix with n <= 5."""
    n = len(a)
    if n > MAX_N:
        raise ValueError(f"oracle supports n <= {MAX_N}, got {n}")
    m, shift = _to_integer_matrix(a)
    p = squarefree(charpoly(m))
    scale = 1 << shift
    real = largest_real_root(p)
    best = abs(float(real / scale)) if real is not None else 0.0
    roots, ok = durand_kerner(p, scale)
    # An unconverged sweep bounds nothing; the Sturm root alone is then
    # the answer, which Perron-Frobenius guarantees is the max modulus.
    if ok:
        best = max([best] + [abs(z) for z in roots])
    return best

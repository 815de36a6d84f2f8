"""Special-function kernel used by every well family.

All polynomial families are evaluated through their stable three-term
recurrences rather than coefficient expansion, which keeps them accurate
well past degree 15. Factorial ratios that appear in normalization
constants are formed in log space via :func:`log_gamma_ratio` so that
states with large indices do not overflow.

Conventions:

* Hermite polynomials follow the physicists' convention
  (H0 = 1, H1 = 2x).
* Associated Legendre functions include the Condon-Shortley factor
  (-1)^m, so P_1^1(0) = -1.
* Generalized Laguerre polynomials use the modern convention
  L_n^a(0) = C(n + a, n).
* Spherical harmonics are orthonormal over the unit sphere, with
  negative orders defined by Y_l^{-m} = (-1)^m conj(Y_l^m).
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "PolyIndex",
    "hermite",
    "assoc_legendre",
    "laguerre",
    "kummer_truncated",
    "spherical_harmonic",
    "log_gamma_ratio",
]


class PolyIndex:
    """Degree/order pair labeling one member of a polynomial family.

    ``degree`` is the polynomial degree n >= 0. ``order`` is the upper
    index: the real Laguerre alpha, or the integer Legendre order m
    (which must then satisfy \\|m\\| <= degree).
    """

    __slots__ = ("degree", "order")

    def __init__(self, degree: int, order: float = 0.0):
        if degree < 0 or degree != int(degree):
            raise ValueError(f"degree must be a nonnegative integer, got {degree}")
        self.degree = int(degree)
        self.order = order

    def require_legendre(self) -> tuple[int, int]:
        m = self.order
        if m != int(m) or abs(m) > self.degree:
            raise ValueError(
                f"Legendre order must be an integer with |m| <= l, got l={self.degree} m={m}"
            )
        return self.degree, int(m)

    def __repr__(self) -> str:
        return f"PolyIndex(degree={self.degree}, order={self.order})"


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x).

    Upward recurrence H_{k+1} = 2 x H_k - 2 k H_{k-1}; total function of
    finite x for every n >= 0.
    """
    if n < 0 or n != int(n):
        raise ValueError(f"hermite degree must be a nonnegative integer, got {n}")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev[()] if h_prev.ndim == 0 else h_prev
    h = 2.0 * x
    for k in range(1, int(n)):
        h, h_prev = 2.0 * x * h - 2.0 * k * h_prev, h
    return h[()] if h.ndim == 0 else h


def assoc_legendre(l: int, m: int, x):
    """Associated Legendre function P_l^m(x) with Condon-Shortley phase.

    Valid for 0 <= m <= l and |x| <= 1. Recurrence: seed
    P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}, climb l with the standard
    three-term relation.
    """
    if l < 0 or m < 0 or m > l:
        raise ValueError(f"need 0 <= m <= l, got l={l} m={m}")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise ValueError("assoc_legendre requires |x| <= 1")
    # P_m^m
    pmm = np.ones_like(x)
    if m > 0:
        somx2 = np.sqrt((1.0 - x) * (1.0 + x))
        fact = 1.0
        for _ in range(m):
            pmm = pmm * (-fact) * somx2
            fact += 2.0
    if l == m:
        return pmm[()] if pmm.ndim == 0 else pmm
    pmmp1 = x * (2.0 * m + 1.0) * pmm
    if l == m + 1:
        return pmmp1[()] if pmmp1.ndim == 0 else pmmp1
    for ll in range(m + 2, l + 1):
        pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m)
        pmm, pmmp1 = pmmp1, pll
    return pmmp1[()] if pmmp1.ndim == 0 else pmmp1


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^alpha(x), modern convention.

    L_0 = 1, L_1 = 1 + alpha - x, and
    (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}.
    Requires alpha > -1 and x >= 0 (the orthogonality domain).
    """
    if n < 0 or n != int(n):
        raise ValueError(f"laguerre degree must be a nonnegative integer, got {n}")
    if alpha <= -1.0:
        raise ValueError(f"laguerre requires alpha > -1, got {alpha}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise ValueError("laguerre requires x >= 0")
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev[()] if p_prev.ndim == 0 else p_prev
    p = 1.0 + alpha - x
    for k in range(1, int(n)):
        p, p_prev = ((2.0 * k + 1.0 + alpha - x) * p - (k + alpha) * p_prev) / (k + 1.0), p
    return p[()] if p.ndim == 0 else p


def kummer_truncated(neg_n: int, c: float, x):
    """Polynomial branch of the confluent hypergeometric function 1F1(a, c; x).

    Only the terminating case a = -n (n a nonnegative integer) is
    supported; the sum then has n + 1 terms. Raises if a Pochhammer
    factor (c)_j vanishes before the series truncates, i.e. when c is
    one of 0, -1, ..., -(n-1).
    """
    a = neg_n
    if a > 0 or a != int(a):
        raise ValueError(f"kummer_truncated needs a nonpositive integer a, got {a}")
    n = -int(a)
    if c == int(c) and -(n - 1) <= int(c) <= 0:
        raise ValueError(f"Pochhammer (c)_j vanishes before truncation for c={c}, a={a}")
    x = np.asarray(x, dtype=float)
    total = np.ones_like(x)
    term = np.ones_like(x)
    for j in range(n):
        term = term * ((a + j) * x) / ((c + j) * (j + 1.0))
        total = total + term
    return total[()] if total.ndim == 0 else total


def spherical_harmonic(l: int, m: int, theta, phi) -> complex:
    """Orthonormal spherical harmonic Y_l^m(theta, phi).

    Normalized so that the integral of |Y|^2 over the sphere is 1; the
    Condon-Shortley sign lives in :func:`assoc_legendre`. Negative m is
    obtained from the conjugation symmetry Y_l^{-m} = (-1)^m conj(Y_l^m).
    """
    if abs(m) > l:
        raise ValueError(f"need |m| <= l, got l={l} m={m}")
    if m < 0:
        y = spherical_harmonic(l, -m, theta, phi)
        return (-1.0) ** (-m) * np.conjugate(y)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    lognorm = 0.5 * (
        math.log((2.0 * l + 1.0) / (4.0 * math.pi)) + log_gamma_ratio(l - m + 1.0, l + m + 1.0)
    )
    amp = math.exp(lognorm) * assoc_legendre(l, m, np.cos(theta))
    out = amp * np.exp(1j * m * phi)
    return out[()] if np.ndim(out) == 0 else out


def log_gamma_ratio(a: float, b: float) -> float:
    """ln Gamma(a) - ln Gamma(b) for a, b > 0.

    Stable replacement for factorial ratios in normalization constants,
    which overflow as doubles once the indices reach the mid-80s.
    """
    if a <= 0.0 or b <= 0.0:
        raise ValueError(f"log_gamma_ratio requires positive arguments, got {a}, {b}")
    return math.lgamma(a) - math.lgamma(b)

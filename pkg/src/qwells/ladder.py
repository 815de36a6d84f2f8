"""Algebraic treatment of the harmonic oscillator on a truncated number basis.

The annihilation operator is carried as a dense D x D matrix with
sqrt(n) on the superdiagonal; its transpose creates quanta. Truncating
the basis leaves one known artifact: the commutator [a, a+] equals the
identity except in the last diagonal entry, where it is -(D-1). All
algebra checks therefore run on the leading (D-1) x (D-1) block, and the
corner deviation is exposed as an exact identity instead of being padded
away.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "build_ladder",
    "number_operator",
    "commutator_defect",
    "hamiltonian",
    "hamiltonian_spectrum",
    "coordinate_ground_state",
    "coordinate_raise",
    "GridTooCoarseError",
]


class GridTooCoarseError(ValueError):
    """Raised when a finite-difference grid cannot support the request."""


def build_ladder(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Annihilation and creation matrices on the first ``dim`` number states.

    a[n-1, n] = sqrt(n); the creation operator is the transpose. The pair
    satisfies a e_0 = 0 and a+ e_n = sqrt(n+1) e_{n+1} for n < dim - 1.
    """
    if dim < 2 or dim != int(dim):
        raise ValueError(f"Fock dimension must be an integer >= 2, got {dim}")
    a = np.diag(np.sqrt(np.arange(1.0, dim)), k=1)
    return a, a.T.copy()


def number_operator(dim: int) -> np.ndarray:
    """N = a+ a, diagonal with entries 0, 1, ..., dim-1."""
    a, adag = build_ladder(dim)
    return adag @ a


def commutator_defect(dim: int) -> float:
    """Max deviation of [a, a+] from the identity on the leading block.

    The final basis row is excluded: there ([a, a+] - 1)[D-1, D-1] = -D
    exactly, the unavoidable fingerprint of the truncation.
    """
    a, adag = build_ladder(dim)
    comm = a @ adag - adag @ a
    defect = comm - np.eye(dim)
    return float(np.max(np.abs(defect[: dim - 1, : dim - 1])))


def hamiltonian(dim: int, omega: float = 1.0) -> np.ndarray:
    """H = omega (N + 1/2), a real symmetric (in fact diagonal) matrix."""
    return omega * (number_operator(dim) + 0.5 * np.eye(dim))


def hamiltonian_spectrum(dim: int, omega: float = 1.0) -> np.ndarray:
    """Sorted eigenvalues of H; equals omega (n + 1/2) for n < dim."""
    return np.linalg.eigvalsh(hamiltonian(dim, omega))


def coordinate_ground_state(x, x0: float):
    """Ground-state wavefunction annihilated by (x + x0^2 d/dx).

    psi_0(x) = (sqrt(pi) x0)^{-1/2} exp(-(x/x0)^2 / 2) with oscillator
    length x0 > 0.
    """
    if x0 <= 0:
        raise ValueError(f"oscillator length must be positive, got {x0}")
    x = np.asarray(x, dtype=float)
    out = (math.sqrt(math.pi) * x0) ** -0.5 * np.exp(-0.5 * (x / x0) ** 2)
    return out[()] if out.ndim == 0 else out


def coordinate_raise(x: np.ndarray, psi: np.ndarray, n: int, x0: float) -> np.ndarray:
    """Apply the coordinate-space creation operator to samples of psi_n.

    Returns samples of psi_{n+1} = (x - x0^2 d/dx) psi_n / (x0 sqrt(2(n+1)))
    on the same uniform grid, renormalized. The derivative is a centered
    second-order difference, one-sided at the two ends where psi must
    already have decayed below 1e-12 of its peak.
    """
    x = np.asarray(x, dtype=float)
    psi = np.asarray(psi, dtype=float)
    if x.shape != psi.shape or x.ndim != 1 or x.size < 5:
        raise ValueError("need matching 1D sample arrays with at least 5 points")
    h = (x[-1] - x[0]) / (x.size - 1)
    wobble = 8.0 * np.finfo(float).eps * np.max(np.abs(x))
    if not np.allclose(np.diff(x), h, rtol=1e-9, atol=wobble):
        raise ValueError("grid must be uniform")
    peak = np.max(np.abs(psi))
    if max(abs(psi[0]), abs(psi[-1])) > 1e-12 * peak:
        raise ValueError("psi must decay below 1e-12 of its peak at the grid ends")

    dpsi = np.empty_like(psi)
    dpsi[1:-1] = (psi[2:] - psi[:-2]) / (2.0 * h)
    dpsi[0] = (psi[1] - psi[0]) / h
    dpsi[-1] = (psi[-1] - psi[-2]) / h

    raised = (x * psi - x0**2 * dpsi) / (x0 * math.sqrt(2.0 * (n + 1.0)))
    norm = math.sqrt(float(np.trapz(raised**2, x)))
    if abs(norm - 1.0) > 1e-3:
        raise GridTooCoarseError(
            f"raised state norm {norm:.6f} deviates from 1 by more than 1e-3; refine the grid"
        )
    return raised / norm

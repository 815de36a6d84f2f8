"""Old-quantum machinery: Bohr circles, phase-space quantization, spectroscopy.

Quantization here predates wave mechanics: allowed orbits are selected by
the closed-path action integral equaling an integer number of quanta
(2 pi n with hbar = 1). The module evaluates that action numerically for
arbitrary confining wells, inverts it for the quantized energies, and
carries the frequency-condition arithmetic that links level differences
to photon wavelengths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BracketError, ConvergenceError
from .wells import CONSTANTS

__all__ = [
    "OrbitSpec",
    "ActionProblem",
    "bohr_radius",
    "bohr_energy",
    "transition_wavelength",
    "find_turning_points",
    "action_integral",
    "ws_quantize",
    "angular_momentum_modulus",
    "azimuthal_momentum",
    "orientation_count",
]

_POSITION_TOL = 1e-12


@dataclass(frozen=True)
class OrbitSpec:
    """Quantized circular orbit; radius n^2 in Bohr-radius units."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"orbit index must be >= 1, got {self.n}")

    @property
    def radius(self) -> float:
        return float(self.n**2)


def bohr_radius(n: int) -> float:
    """Radius of the n-th quantized circle, n^2 Bohr radii."""
    return OrbitSpec(n).radius


def bohr_energy(n: int, units: str = "rydberg") -> float:
    """Circular-orbit energy from momentum quantization plus force balance.

    With hbar = m = e = 1 the quantization p a = n and the balance
    p^2 / a = 1 / a^2 give a = n^2, so the kinetic and potential pieces
    are 1/(2 n^2) and -1/n^2 Hartree. Matches the wave-mechanical
    spectrum exactly.
    """
    a = bohr_radius(n)
    p = n / a
    e_hartree = 0.5 * p * p - 1.0 / a
    e_ry = 2.0 * e_hartree
    if units == "rydberg":
        return e_ry
    if units == "ev":
        return e_ry * CONSTANTS.rydberg_ev
    raise ValueError(f"unknown unit system {units!r}")


def transition_wavelength(e_upper_ev: float, e_lower_ev: float) -> float:
    """Photon wavelength in angstroms for a downward jump between levels."""
    if e_upper_ev == e_lower_ev:
        raise ValueError("degenerate levels: transition wavelength is infinite")
    if e_upper_ev < e_lower_ev:
        raise ValueError("need e_upper > e_lower for an emission wavelength")
    return CONSTANTS.hc_ev_angstrom / (e_upper_ev - e_lower_ev)


@dataclass(frozen=True)
class ActionProblem:
    """Even confining well and one energy above its minimum."""

    potential: Callable[[float], float]
    energy: float

    def __post_init__(self):
        if self.energy <= self.potential(0.0):
            raise ValueError("energy must exceed the well minimum at x = 0")


def _bisect_crossing(f, lo: float, hi: float) -> float:
    """Root of f (sign change assumed) to 1e-12 in position."""
    f_lo = f(lo)
    for _ in range(200):
        if hi - lo <= _POSITION_TOL:
            break
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0) == (f_lo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_turning_points(problem: ActionProblem) -> tuple[float, float]:
    """Classical turning points V(x) = E located by geometric scan + bisection."""
    v, e = problem.potential, problem.energy

    def outward(sign: float) -> float:
        x_in, x_out = 0.0, sign * 1e-3
        for _ in range(200):
            if v(x_out) > e:
                return _bisect_crossing(lambda x: v(x) - e, *sorted((x_in, x_out)))
            x_in, x_out = x_out, x_out * 2.0
        raise BracketError("no classical turning point found; well may not confine")

    x_minus = outward(-1.0)
    x_plus = outward(+1.0)
    return x_minus, x_plus


def action_integral(problem: ActionProblem, n_nodes: int = 256) -> float:
    """Closed-orbit action J = 2 int sqrt(2 (E - V)) dx between turning points.

    Gauss-Chebyshev quadrature of the second kind absorbs the square-root
    vanishing of the momentum at both endpoints, so smooth wells converge
    geometrically (and the parabolic well is integrated exactly).
    """
    x_minus, x_plus = find_turning_points(problem)
    mid = 0.5 * (x_plus + x_minus)
    half = 0.5 * (x_plus - x_minus)
    j = np.arange(1, n_nodes + 1)
    theta = j * math.pi / (n_nodes + 1.0)
    t = np.cos(theta)
    weights = math.pi / (n_nodes + 1.0) * np.sin(theta) ** 2
    x = mid + half * t
    p2 = np.maximum(2.0 * (problem.energy - np.asarray([problem.potential(xi) for xi in x])), 0.0)
    integrand = np.sqrt(p2) / np.sqrt(1.0 - t**2)
    return float(2.0 * half * np.sum(weights * integrand))


def ws_quantize(potential: Callable[[float], float], n: int, n_nodes: int = 256) -> float:
    """Energy of the n-th allowed orbit, solving J(E) = 2 pi n by bisection.

    Requires J(E) strictly increasing (true for confining wells). The
    search doubles an energy window above the well minimum until the
    action exceeds the quantum, then refines to 1e-9 in energy.
    """
    if n < 1:
        raise ValueError(f"quantum number must be >= 1, got {n}")
    target = 2.0 * math.pi * n
    v0 = potential(0.0)

    def action(e: float) -> float:
        return action_integral(ActionProblem(potential, e), n_nodes)

    step = 1.0
    lo = v0
    hi = v0 + step
    for _ in range(60):
        if action(hi) > target:
            break
        lo, hi = hi, v0 + 2.0 * (hi - v0)
    else:
        raise BracketError(f"action never reaches 2 pi {n}; is the well confining?")

    for _ in range(200):
        if hi - lo <= 1e-9:
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        if action(mid) < target:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError("energy bisection for the action condition did not converge")


def angular_momentum_modulus(l: int, si: bool = False) -> float:
    """sqrt(l (l+1)) in units of hbar, or in J s when ``si`` is set."""
    if l < 0:
        raise ValueError(f"orbital number must be >= 0, got {l}")
    value = math.sqrt(l * (l + 1.0))
    return value * CONSTANTS.hbar_si if si else value


def azimuthal_momentum(m: int, si: bool = False) -> float:
    """Conserved azimuthal momentum m hbar of a quantized orbit."""
    return m * CONSTANTS.hbar_si if si else float(m)


def orientation_count(l: int, era: str = "modern") -> int:
    """Number of allowed space orientations of the angular momentum.

    Modern counting gives 2l + 1 projections. The old vector model
    discarded the zero projection as unphysical, leaving 2l.
    """
    if l < 0:
        raise ValueError(f"orbital number must be >= 0, got {l}")
    if era == "modern":
        return 2 * l + 1
    if era == "old":
        return 2 * l
    raise ValueError(f"unknown era {era!r}")

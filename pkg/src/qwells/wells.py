"""Closed-form stationary states of the four canonical wells.

Families and their unit systems:

* ``box``      infinite square well of width L, natural units (hbar = m = 1),
               centered at the origin.
* ``ho1d``     one-dimensional harmonic oscillator, natural units; the
               Gaussian width parameter equals omega when hbar = m = 1.
* ``hydrogen`` Coulomb well in Rydberg atomic units: lengths in Bohr radii,
               energies in Rydberg, so E_n = -1/n^2.
* ``iso_ho``   isotropic three-dimensional oscillator, natural units.

Every wavefunction here is unit-normalized with a positive overall
constant (an overall phase is unobservable, so signs of printed
normalization constants elsewhere are irrelevant). Normalization factors
are assembled in log space to stay finite at large quantum numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .specfun import hermite, laguerre, log_gamma_ratio, spherical_harmonic

__all__ = [
    "PhysicalConstants",
    "CONSTANTS",
    "BoxSpec",
    "OscSpec",
    "HydrogenQN",
    "IsoOscQN",
    "StationaryState",
    "box_energy",
    "box_wavefunction",
    "ho_energy",
    "ho_wavefunction",
    "hydrogen_energy",
    "hydrogen_radial",
    "hydrogen_wavefunction",
    "iso_ho_energy",
    "iso_ho_radial",
    "iso_ho_wavefunction",
    "dynamical_phase",
    "degeneracy",
    "radial_probability",
    "radial_moment",
    "stationary_state",
]


@dataclass(frozen=True)
class PhysicalConstants:
    """Conversion constants between atomic and laboratory units.

    ``rydberg_ev`` and ``bohr_radius_angstrom`` carry the three-figure
    values used throughout the energy-level arithmetic; ``hc_ev_angstrom``
    is derived from the SI definitions of h, c and e, and is consistent
    with the (Ry, a_B) pair at the same three-figure precision.
    """

    rydberg_ev: float = 13.606
    bohr_radius_angstrom: float = 0.529
    hbar_si: float = 1.054e-34          # J s
    planck_si: float = 6.62607015e-34   # J s
    c_si: float = 299792458.0           # m / s
    e_charge_si: float = 1.602176634e-19  # C
    hc_ev_angstrom: float = field(init=False)
    hartree_ev: float = field(init=False)

    def __post_init__(self):
        hc = self.planck_si * self.c_si / self.e_charge_si * 1e10
        object.__setattr__(self, "hc_ev_angstrom", hc)
        object.__setattr__(self, "hartree_ev", 2.0 * self.rydberg_ev)


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class BoxSpec:
    """Infinite square well of width L on [-L/2, L/2]."""

    width: float = 1.0

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError(f"box width must be positive, got {self.width}")


@dataclass(frozen=True)
class OscSpec:
    """Harmonic well with frequency omega; hbar = m = 1."""

    omega: float = 1.0

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError(f"oscillator frequency must be positive, got {self.omega}")

    @property
    def lam(self) -> float:
        """Gaussian width parameter m*omega/hbar, equal to omega here."""
        return self.omega


@dataclass(frozen=True)
class HydrogenQN:
    """Hydrogen quantum numbers with 0 <= l <= n-1 and |m| <= l."""

    n: int
    l: int = 0
    m: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"principal quantum number must be >= 1, got {self.n}")
        if not 0 <= self.l <= self.n - 1:
            raise ValueError(f"need 0 <= l <= n-1, got n={self.n} l={self.l}")
        if abs(self.m) > self.l:
            raise ValueError(f"need |m| <= l, got l={self.l} m={self.m}")


@dataclass(frozen=True)
class IsoOscQN:
    """Radial/orbital/magnetic labels of the isotropic oscillator."""

    n_r: int
    l: int = 0
    m: int = 0

    def __post_init__(self):
        if self.n_r < 0 or self.l < 0:
            raise ValueError(f"need n_r >= 0 and l >= 0, got n_r={self.n_r} l={self.l}")
        if abs(self.m) > self.l:
            raise ValueError(f"need |m| <= l, got l={self.l} m={self.m}")

    @property
    def shell(self) -> int:
        """Principal shell N = 2 n_r + l; the energy depends only on this."""
        return 2 * self.n_r + self.l


# ---------------------------------------------------------------------------
# infinite square well


def box_energy(n: int, spec: BoxSpec = BoxSpec()) -> float:
    """E_n = pi^2 n^2 / (2 L^2), n = 1, 2, ..."""
    if n < 1 or n != int(n):
        raise ValueError(f"box level index must be a positive integer, got {n}")
    return math.pi**2 * n**2 / (2.0 * spec.width**2)


def box_wavefunction(n: int, x, spec: BoxSpec = BoxSpec()):
    """Normalized box eigenfunction; cosine for odd n, sine for even n.

    Identically zero outside |x| > L/2.
    """
    if n < 1 or n != int(n):
        raise ValueError(f"box level index must be a positive integer, got {n}")
    x = np.asarray(x, dtype=float)
    L = spec.width
    amp = math.sqrt(2.0 / L)
    kn = n * math.pi / L
    shape = amp * (np.cos(kn * x) if n % 2 == 1 else np.sin(kn * x))
    out = np.where(np.abs(x) <= L / 2.0, shape, 0.0)
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# 1D harmonic oscillator


def ho_energy(n: int, spec: OscSpec = OscSpec()) -> float:
    """E_n = (n + 1/2) omega; the n = 0 value is the zero-point energy."""
    if n < 0 or n != int(n):
        raise ValueError(f"oscillator level index must be >= 0, got {n}")
    return (n + 0.5) * spec.omega


def _ho_lognorm(n: int, lam: float) -> float:
    return 0.25 * math.log(lam / math.pi) - 0.5 * (n * math.log(2.0) + math.lgamma(n + 1.0))


def ho_wavefunction(n: int, x, spec: OscSpec = OscSpec()):
    """psi_n(x) = N_n exp(-lam x^2 / 2) H_n(sqrt(lam) x), unit L2 norm."""
    if n < 0 or n != int(n):
        raise ValueError(f"oscillator level index must be >= 0, got {n}")
    lam = spec.lam
    x = np.asarray(x, dtype=float)
    norm = math.exp(_ho_lognorm(n, lam))
    out = norm * np.exp(-0.5 * lam * x**2) * hermite(n, math.sqrt(lam) * x)
    return out[()] if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# hydrogen (Rydberg atomic units: lengths in a_B, energies in Ry)


def hydrogen_energy(n: int, units: str = "rydberg") -> float:
    """Bound-level energy -1/n^2 in Rydberg, or its eV equivalent."""
    if n < 1 or n != int(n):
        raise ValueError(f"principal quantum number must be >= 1, got {n}")
    e_ry = -1.0 / n**2
    if units == "rydberg":
        return e_ry
    if units == "ev":
        return e_ry * CONSTANTS.rydberg_ev
    raise ValueError(f"unknown unit system {units!r}")


def hydrogen_radial(n: int, l: int, r):
    """Normalized radial factor R_nl(r), int R^2 r^2 dr = 1.

    Uses the (a r)^l prefactored closed form, so r = 0 is evaluated
    directly rather than as chi(r)/r.
    """
    HydrogenQN(n, l)  # validate
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be nonnegative")
    a = 2.0 / n
    lognorm = 1.5 * math.log(a) + 0.5 * (
        log_gamma_ratio(n - l, n + l + 1.0) - math.log(2.0 * n)
    )
    ar = a * r
    out = math.exp(lognorm) * ar**l * np.exp(-0.5 * ar) * laguerre(n - l - 1, 2 * l + 1, ar)
    return out[()] if np.ndim(out) == 0 else out


def hydrogen_wavefunction(qn: HydrogenQN, r, theta, phi):
    """Full bound state R_nl(r) Y_l^m(theta, phi); int |psi|^2 dV = 1."""
    return hydrogen_radial(qn.n, qn.l, r) * spherical_harmonic(qn.l, qn.m, theta, phi)


# ---------------------------------------------------------------------------
# isotropic 3D harmonic oscillator


def iso_ho_energy(qn: IsoOscQN, spec: OscSpec = OscSpec()) -> float:
    """E = omega (2 n_r + l + 3/2); the 3/2 is the 3D zero-point energy."""
    return spec.omega * (qn.shell + 1.5)


def iso_ho_radial(qn: IsoOscQN, r, spec: OscSpec = OscSpec()):
    """Radial factor N r^l exp(-lam r^2/2) L_{n_r}^{l+1/2}(lam r^2).

    Normalized so that int R^2 r^2 dr = 1.
    """
    lam = spec.lam
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be nonnegative")
    n_r, l = qn.n_r, qn.l
    lognorm = 0.5 * (
        math.log(2.0)
        + (l + 1.5) * math.log(lam)
        + log_gamma_ratio(n_r + 1.0, n_r + l + 1.5)
    )
    out = math.exp(lognorm) * r**l * np.exp(-0.5 * lam * r**2) * laguerre(n_r, l + 0.5, lam * r**2)
    return out[()] if np.ndim(out) == 0 else out


def iso_ho_wavefunction(qn: IsoOscQN, r, theta, phi, spec: OscSpec = OscSpec()):
    """Full 3D oscillator state, radial factor times spherical harmonic."""
    return iso_ho_radial(qn, r, spec) * spherical_harmonic(qn.l, qn.m, theta, phi)


# ---------------------------------------------------------------------------
# shared observables


def dynamical_phase(energy: float, t: float) -> complex:
    """Time factor exp(-i E t) of a constant-energy wave (hbar = 1).

    Unit modulus for all t, so |psi|^2 is time independent; the period is
    2 pi / |E|.
    """
    return complex(np.exp(-1j * energy * t))


def degeneracy(family: str, level: int) -> int:
    """Number of independent states sharing one energy level.

    hydrogen: n^2 states at principal number n.
    iso_ho:   (N+1)(N+2)/2 states in shell N = 2 n_r + l.
    """
    if family == "hydrogen":
        if level < 1:
            raise ValueError(f"hydrogen level must be >= 1, got {level}")
        return level * level
    if family == "iso_ho":
        if level < 0:
            raise ValueError(f"oscillator shell must be >= 0, got {level}")
        return (level + 1) * (level + 2) // 2
    raise ValueError(f"no degeneracy rule for family {family!r}")


def radial_probability(qn: HydrogenQN, r):
    """P(r) = r^2 |R_nl(r)|^2, the probability density of the radius."""
    r = np.asarray(r, dtype=float)
    out = r**2 * hydrogen_radial(qn.n, qn.l, r) ** 2
    return out[()] if np.ndim(out) == 0 else out


def _gauss_legendre(a: float, b: float, n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def _gauss_composite(a: float, b: float, panel_width: float, panel_nodes: int = 160):
    """Panel-wise Gauss-Legendre rule; node cost grows linearly with b - a."""
    n_panels = max(1, int(math.ceil((b - a) / panel_width)))
    edges = np.linspace(a, b, n_panels + 1)
    xs, ws = [], []
    x0, w0 = np.polynomial.legendre.leggauss(panel_nodes)
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        xs.append(lo + half * (x0 + 1.0))
        ws.append(half * w0)
    return np.concatenate(xs), np.concatenate(ws)


def hydrogen_turning_radius(n: int, l: int = 0) -> float:
    """Outer classical turning point of level (n, l) in Bohr radii."""
    # V(r) = -2/r + l(l+1)/r^2 = E = -1/n^2; larger root of the quadratic
    e = -1.0 / n**2
    disc = 4.0 + 4.0 * e * l * (l + 1)
    return (-2.0 - math.sqrt(disc)) / (2.0 * e)


def radial_quadrature(n: int, l: int = 0):
    """Gauss-Legendre rule on [0, R] sized for states up to (n, l).

    R is 40 times the outer classical turning point. Beyond a modest R a
    single global rule stops resolving the innermost lobe of low states,
    so the rule is assembled from fixed-width panels whose count grows
    with R.
    """
    r_max = 40.0 * hydrogen_turning_radius(n, l)
    if r_max <= 120.0:
        return _gauss_legendre(0.0, r_max, 400)
    return _gauss_composite(0.0, r_max, panel_width=40.0)


def radial_moment(qn: HydrogenQN, power: int) -> float:
    """Expectation value of r^power under P(r).

    Supported for integer power >= -2; the integral diverges for
    power <= -3 on s states, so those are rejected.
    """
    if power != int(power):
        raise ValueError(f"moment power must be an integer, got {power}")
    if power <= -3:
        raise ValueError(f"<r^{power}> diverges or is unsupported; need power >= -2")
    r, w = radial_quadrature(qn.n, qn.l)
    p = radial_probability(qn, r)
    if power >= 0:
        return float(np.sum(w * p * r**power))
    # negative powers: drop the r = 0 node issue by using the r^2 factor
    integrand = r ** (2 + power) * hydrogen_radial(qn.n, qn.l, r) ** 2
    return float(np.sum(w * integrand))


# ---------------------------------------------------------------------------
# uniform handle on a single state (used by the CLI)


@dataclass(frozen=True)
class StationaryState:
    """One labeled bound state: family, quantum numbers, energy, evaluator.

    ``energy`` is in the family's unit system (natural units for box and
    oscillators, Rydberg for hydrogen). ``norm_const`` is the positive
    overall normalization factor of the spatial wavefunction.
    """

    family: str
    qn: tuple
    energy: float
    norm_const: float
    _evaluate: callable

    def __call__(self, *coords):
        return self._evaluate(*coords)

    def probability_density(self, *coords):
        return np.abs(self._evaluate(*coords)) ** 2


def stationary_state(
    family: str,
    n: int = 0,
    l: int = 0,
    m: int = 0,
    box: BoxSpec | None = None,
    osc: OscSpec | None = None,
) -> StationaryState:
    """Build the labeled state for a family; raises ValueError on bad labels."""
    if family == "box":
        spec = box or BoxSpec()
        e = box_energy(n, spec)
        return StationaryState(
            family, (n,), e, math.sqrt(2.0 / spec.width),
            lambda x, _n=n, _s=spec: box_wavefunction(_n, x, _s),
        )
    if family == "ho1d":
        spec = osc or OscSpec()
        e = ho_energy(n, spec)
        return StationaryState(
            family, (n,), e, math.exp(_ho_lognorm(n, spec.lam)),
            lambda x, _n=n, _s=spec: ho_wavefunction(_n, x, _s),
        )
    if family == "hydrogen":
        qn = HydrogenQN(n, l, m)
        e = hydrogen_energy(n)
        a = 2.0 / n
        norm = math.exp(
            1.5 * math.log(a) + 0.5 * (log_gamma_ratio(n - l, n + l + 1.0) - math.log(2.0 * n))
        )
        return StationaryState(
            family, (n, l, m), e, norm,
            lambda r, theta=1.0, phi=0.0, _q=qn: hydrogen_wavefunction(_q, r, theta, phi),
        )
    if family == "iso_ho":
        spec = osc or OscSpec()
        qn = IsoOscQN(n, l, m)
        e = iso_ho_energy(qn, spec)
        lam = spec.lam
        norm = math.exp(
            0.5 * (math.log(2.0) + (l + 1.5) * math.log(lam) + log_gamma_ratio(n + 1.0, n + l + 1.5))
        )
        return StationaryState(
            family, (n, l, m), e, norm,
            lambda r, theta=1.0, phi=0.0, _q=qn, _s=spec: iso_ho_wavefunction(_q, r, theta, phi, _s),
        )
    raise ValueError(f"unknown family {family!r}")

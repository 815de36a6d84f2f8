"""Numerov integration and shooting eigenvalue search.

This module recovers well spectra without using any closed-form solution:
it integrates u'' = mass_factor * (V_eff - E) u with the fourth-order
Numerov stencil from both ends, matches log-derivatives at an interior
point, and bisects in energy with node-count steering. In Sturm-Liouville
form the operator is (u')' - q u = -mu w u with q = mass_factor * V_eff
and w = mass_factor, so the reported eigenvalue mu coincides with the
physical energy E; results are always quoted as E.

Unit conventions mirror the analytic families: natural units
(mass_factor = 2) for the box and the oscillators, Rydberg atomic units
(mass_factor = 1, V = -2/r) for hydrogen so the target spectrum is
exactly -1/n^2.

Radial problems start at r_1 = h with the power-law seed r^(l+1),
corrected by the first series coefficient when a Coulomb term is present.
Infinite domains are truncated where the well rises 25 energy units above
the highest level of interest (tail suppression of order e^-10); the
Coulomb well never rises that far, so there the cutoff is a fixed number
of decay lengths past the outer turning point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import BracketError, ConvergenceError, GridMismatchError
from .wells import hydrogen_turning_radius

__all__ = [
    "GridSpec",
    "SLProblem",
    "EigenResult",
    "numerov_integrate",
    "shoot_eigenvalue",
    "auto_bracket",
    "orthogonality_matrix",
    "expand_in_eigenbasis",
    "self_adjointness_defect",
    "greens_boundary_term",
    "box_problem",
    "ho_problem",
    "hydrogen_problem",
    "iso_ho_problem",
]

_ENERGY_TOL = 1e-10
_MAX_BISECTIONS = 200
_RESCALE_LIMIT = 1e250


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with at least 100 intervals."""

    start: float
    end: float
    step: float

    def __post_init__(self):
        if self.step <= 0 or self.end <= self.start:
            raise ValueError("grid needs end > start and step > 0")
        if (self.end - self.start) / self.step < 100:
            raise ValueError("grid must span at least 100 steps")

    @property
    def n_points(self) -> int:
        return int(round((self.end - self.start) / self.step)) + 1

    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.n_points)

    @classmethod
    def with_points(cls, start: float, end: float, n_points: int) -> "GridSpec":
        return cls(start, end, (end - start) / (n_points - 1))


@dataclass(frozen=True)
class SLProblem:
    """One-dimensional Schrodinger eigenproblem in self-adjoint form.

    ``boundary`` selects the seeding at the integration ends:
    "dirichlet" (hard walls), "decay" (truncated exponential tails) or
    "radial" (half-line, u ~ r^(l+1) at the origin, decay at the far end).
    ``coulomb_strength`` is the Z2 of an attractive -Z2/r term, used only
    to improve the origin seed.
    """

    potential: Callable[[np.ndarray], np.ndarray]
    domain: tuple[float, float]
    boundary: str = "dirichlet"
    angular_momentum: int = 0
    mass_factor: float = 2.0
    coulomb_strength: float = 0.0
    weight: Callable[[np.ndarray], np.ndarray] | None = None
    default_grid: GridSpec | None = None

    def __post_init__(self):
        if self.domain[1] <= self.domain[0]:
            raise ValueError("domain must have positive length")
        if self.boundary not in ("dirichlet", "decay", "radial"):
            raise ValueError(f"unknown boundary kind {self.boundary!r}")
        if self.angular_momentum < 0:
            raise ValueError("angular momentum must be nonnegative")

    def effective_potential(self, x: np.ndarray) -> np.ndarray:
        v = np.asarray(self.potential(x), dtype=float)
        l = self.angular_momentum
        if self.boundary == "radial" and l > 0:
            v = v + l * (l + 1) / (self.mass_factor * np.asarray(x) ** 2)
        return v

    def grid(self, grid: GridSpec | None = None) -> GridSpec:
        g = grid or self.default_grid
        if g is None:
            raise ValueError("no grid given and the problem has no default grid")
        return g


@dataclass(frozen=True)
class EigenResult:
    """Converged eigenpair: energy, normalized samples, node count."""

    energy: float
    grid: GridSpec
    samples: np.ndarray
    node_count: int
    converged: bool
    iterations: int


# ---------------------------------------------------------------------------
# Numerov core


def _integrate(g: list[float], h: float, u0: float, u1: float) -> list[float]:
    """March u'' = g u with the Numerov stencil; O(h^4) accurate.

    Rescales the running solution whenever it exceeds 1e250 so classically
    forbidden regions cannot overflow.
    """
    h2_12 = h * h / 12.0
    b = [1.0 - h2_12 * gi for gi in g]
    a = [12.0 - 10.0 * bi for bi in b]  # equals 2 (1 + 5 h^2 g / 12)
    u = [0.0] * len(g)
    u[0], u[1] = u0, u1
    for i in range(1, len(g) - 1):
        nxt = (a[i] * u[i] - b[i - 1] * u[i - 1]) / b[i + 1]
        if nxt > _RESCALE_LIMIT or nxt < -_RESCALE_LIMIT:
            scale = abs(nxt)
            for j in range(i + 2):
                u[j] /= scale
            nxt /= scale
        u[i + 1] = nxt
    return u


def _forward_seed(problem: SLProblem, grid: GridSpec) -> tuple[float, float]:
    h = grid.step
    if problem.boundary == "radial":
        l = problem.angular_momentum
        c1 = -problem.mass_factor * problem.coulomb_strength / (2.0 * (l + 1.0))
        r0, r1 = grid.start, grid.start + h
        return r0 ** (l + 1) * (1.0 + c1 * r0), r1 ** (l + 1) * (1.0 + c1 * r1)
    return 0.0, h


def numerov_integrate(
    problem: SLProblem,
    energy: float,
    grid: GridSpec | None = None,
    direction: str = "forward",
) -> np.ndarray:
    """Integrate the problem at fixed energy across the whole grid.

    Forward runs seed the left boundary (zero for walls and truncated
    tails, the power-law series for radial origins); backward runs seed
    zero at the far end. The returned samples are unnormalized.
    """
    g = problem.grid(grid)
    x = g.points()
    rhs = (problem.mass_factor * (problem.effective_potential(x) - energy)).tolist()
    if direction == "forward":
        u0, u1 = _forward_seed(problem, g)
        return np.asarray(_integrate(rhs, g.step, u0, u1))
    if direction == "backward":
        u = _integrate(rhs[::-1], g.step, 0.0, g.step)
        return np.asarray(u[::-1])
    raise ValueError(f"unknown direction {direction!r}")


def _count_nodes(u) -> int:
    signs = [1 if v > 0 else -1 for v in u if v != 0.0]
    return sum(1 for s0, s1 in zip(signs, signs[1:]) if s0 != s1)


class _Shooter:
    """Numerov shooting engine with a fixed potential evaluation.

    Node counting uses the solution integrated forward across the whole
    domain: its interior sign changes count the eigenvalues below the
    trial energy exactly, and the count transition coincides with the
    zero of the two-sided log-derivative mismatch, because the backward
    solution is pinned by the same far-end condition the forward solution
    must reach. The final eigenfunction is assembled from both directions
    and joined at the outermost classical turning point so the decaying
    tail is clean on both sides.
    """

    def __init__(self, problem: SLProblem, grid: GridSpec):
        self.problem = problem
        self.grid = grid
        self.x = grid.points()
        self.h = grid.step
        self.veff = problem.effective_potential(self.x)

    def _rhs(self, energy: float) -> list[float]:
        return (self.problem.mass_factor * (self.veff - energy)).tolist()

    def count_nodes(self, energy: float) -> int:
        """Sign changes of the forward solution, the eigenvalue counter."""
        u0, u1 = _forward_seed(self.problem, self.grid)
        uf = _integrate(self._rhs(energy), self.h, u0, u1)
        return _count_nodes(uf)

    def _matching_index(self, energy: float, uf: list[float]) -> int:
        n = len(self.x)
        allowed = np.nonzero(self.veff < energy)[0]
        m = int(allowed[-1]) if allowed.size else int(0.618 * n)
        m = min(max(m, 5), n - 6)
        # avoid joining the two branches on top of a node
        peak = max(abs(v) for v in uf)
        while m > 5 and abs(uf[m]) < 1e-6 * peak:
            m -= 1
        return m

    def assemble(self, energy: float) -> np.ndarray:
        rhs = self._rhs(energy)
        u0, u1 = _forward_seed(self.problem, self.grid)
        uf = _integrate(rhs, self.h, u0, u1)
        m = self._matching_index(energy, uf)
        ub_rev = _integrate(rhs[m:][::-1], self.h, 0.0, self.h)
        ub = np.asarray(ub_rev[::-1])
        scale = uf[m] / ub[0] if ub[0] != 0.0 else 1.0
        full = np.concatenate([np.asarray(uf[:m]), scale * ub])
        peak = np.max(np.abs(full))
        first = np.nonzero(np.abs(full) > 1e-8 * peak)[0][0]
        if full[first] < 0:
            full = -full
        return full


def _simpson(y: np.ndarray, h: float) -> float:
    """Composite Simpson rule; falls back to 3/8 on a trailing odd panel."""
    n = len(y)
    if n < 4:
        return float(np.trapz(y, dx=h))
    if n % 2 == 1:
        main, tail = y, None
    else:
        main, tail = y[: n - 3], y[n - 4 :]
    total = h / 3.0 * (main[0] + main[-1] + 4.0 * main[1:-1:2].sum() + 2.0 * main[2:-1:2].sum())
    if tail is not None:
        total += 3.0 * h / 8.0 * (tail[0] + 3.0 * tail[1] + 3.0 * tail[2] + tail[3])
    return float(total)


def _weight_values(problem_weight, x: np.ndarray) -> np.ndarray:
    if problem_weight is None:
        return np.ones_like(x)
    return np.asarray(problem_weight(x), dtype=float)


def auto_bracket(
    problem: SLProblem, node_target: int, grid: GridSpec | None = None
) -> tuple[float, float]:
    """Coarse energy sweep counting nodes until the target level is boxed in."""
    g = problem.grid(grid)
    shooter = _Shooter(problem, g)
    veff_interior = shooter.veff[1:-1]
    e_lo = max(float(np.min(veff_interior)), -1e4)
    step = 0.25
    lo = e_lo
    for _ in range(80):
        hi = lo + step
        if shooter.count_nodes(hi) > node_target:
            return lo, hi
        lo, step = hi, step * 2.0
    raise ConvergenceError(f"no bracket found for node target {node_target}")


def shoot_eigenvalue(
    problem: SLProblem,
    node_target: int,
    bracket: tuple[float, float] | None = None,
    grid: GridSpec | None = None,
) -> EigenResult:
    """Locate the eigenvalue whose eigenfunction has ``node_target`` nodes.

    Bisection on the node count of the shooting solution, whose
    transition point is exactly the energy where the forward and backward
    log-derivatives match; refined to 1e-10 absolute. The returned
    samples are assembled from both integration directions, normalized to
    unit weighted norm, and carry the verified node count.
    """
    if node_target < 0:
        raise ValueError("node target must be nonnegative")
    g = problem.grid(grid)
    if bracket is None:
        bracket = auto_bracket(problem, node_target, g)
    lo, hi = float(bracket[0]), float(bracket[1])
    if hi <= lo:
        raise BracketError(f"empty bracket ({lo}, {hi})")
    shooter = _Shooter(problem, g)

    nodes_lo = shooter.count_nodes(lo)
    nodes_hi = shooter.count_nodes(hi)
    if nodes_lo > node_target or nodes_hi <= node_target:
        raise BracketError(
            f"bracket node counts ({nodes_lo}, {nodes_hi}) exclude target {node_target}"
        )

    iterations = 0
    while hi - lo > _ENERGY_TOL:
        iterations += 1
        if iterations > _MAX_BISECTIONS:
            raise ConvergenceError(
                f"no convergence after {_MAX_BISECTIONS} bisections; bracket ({lo}, {hi})"
            )
        mid = 0.5 * (lo + hi)
        if shooter.count_nodes(mid) <= node_target:
            lo = mid
        else:
            hi = mid

    energy = 0.5 * (lo + hi)
    samples = shooter.assemble(energy)
    node_count = _count_nodes(samples[1:-1][np.abs(samples[1:-1]) > 1e-9 * np.max(np.abs(samples))])
    if node_count != node_target:
        raise BracketError(
            f"converged eigenfunction has {node_count} nodes, expected {node_target}"
        )
    w = _weight_values(problem.weight, g.points())
    norm = math.sqrt(_simpson(w * samples**2, g.step))
    return EigenResult(energy, g, samples / norm, node_count, True, iterations)


# ---------------------------------------------------------------------------
# quadrature utilities on shared grids


def _require_shared_grid(states: list[EigenResult]) -> GridSpec:
    g = states[0].grid
    for s in states[1:]:
        if (
            s.grid.start != g.start
            or s.grid.step != g.step
            or s.grid.n_points != g.n_points
        ):
            raise GridMismatchError("states were computed on different grids")
    return g


def orthogonality_matrix(states: list[EigenResult], weight=None) -> np.ndarray:
    """Gram matrix of the states under the weighted Simpson inner product."""
    g = _require_shared_grid(states)
    w = _weight_values(weight, g.points())
    n = len(states)
    gram = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            val = _simpson(w * states[i].samples * states[j].samples, g.step)
            gram[i, j] = gram[j, i] = val
    return gram


def expand_in_eigenbasis(
    target: np.ndarray, basis: list[EigenResult], weight=None
) -> tuple[np.ndarray, float]:
    """Project ``target`` on the eigenbasis; returns (coefficients, residual).

    Coefficients are weighted inner products divided by the basis norms;
    the residual is the L2 norm of what the truncated expansion misses.
    """
    g = _require_shared_grid(basis)
    target = np.asarray(target, dtype=float)
    if target.shape != (g.n_points,):
        raise GridMismatchError("target samples do not match the basis grid")
    w = _weight_values(weight, g.points())
    coeffs = np.empty(len(basis))
    for i, state in enumerate(basis):
        num = _simpson(w * state.samples * target, g.step)
        den = _simpson(w * state.samples**2, g.step)
        coeffs[i] = num / den
    recon = sum(c * s.samples for c, s in zip(coeffs, basis))
    residual = math.sqrt(max(_simpson(w * (target - recon) ** 2, g.step), 0.0))
    return coeffs, residual


def _apply_p_laplacian(y: np.ndarray, h: float, p) -> np.ndarray:
    """(p y')' on interior points via centered differences."""
    if p is None:
        return (y[2:] - 2.0 * y[1:-1] + y[:-2]) / (h * h)
    p = np.asarray(p, dtype=float)
    if p.ndim == 0:
        p = np.full_like(y, float(p))
    # flux form keeps the discrete operator symmetric
    p_half_r = 0.5 * (p[1:-1] + p[2:])
    p_half_l = 0.5 * (p[:-2] + p[1:-1])
    return (p_half_r * (y[2:] - y[1:-1]) - p_half_l * (y[1:-1] - y[:-2])) / (h * h)


def self_adjointness_defect(u: np.ndarray, v: np.ndarray, h: float, p=None) -> float:
    """|integral of (v L u - u L v)| with L y = (p y')', computed discretely.

    Vanishes (to quadrature accuracy) for functions obeying separated or
    periodic boundary conditions; otherwise it equals the Green boundary
    term, see :func:`greens_boundary_term`. Any zeroth-order q term of the
    full operator cancels identically in this bilinear form.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise GridMismatchError("u and v must share one grid")
    integrand = v[1:-1] * _apply_p_laplacian(u, h, p) - u[1:-1] * _apply_p_laplacian(v, h, p)
    return abs(_simpson(integrand, h))


def greens_boundary_term(u: np.ndarray, v: np.ndarray, h: float, p=None) -> float:
    """p (v u' - u v') evaluated across the same trimmed interval.

    Uses centered derivatives at the first and last interior points, the
    integration limits of :func:`self_adjointness_defect`.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if p is None:
        pvals = np.ones_like(u)
    else:
        pvals = np.asarray(p, dtype=float)
        if pvals.ndim == 0:
            pvals = np.full_like(u, float(p))

    def wronskian(i: int) -> float:
        du = (u[i + 1] - u[i - 1]) / (2.0 * h)
        dv = (v[i + 1] - v[i - 1]) / (2.0 * h)
        return pvals[i] * (v[i] * du - u[i] * dv)

    return wronskian(len(u) - 2) - wronskian(1)


# ---------------------------------------------------------------------------
# ready-made problems for the four families


def box_problem(width: float = 1.0, n_points: int = 2001) -> SLProblem:
    """Hard-wall box on [-L/2, L/2] in natural units."""
    half = width / 2.0
    grid = GridSpec.with_points(-half, half, n_points)
    return SLProblem(
        potential=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        domain=(-half, half),
        boundary="dirichlet",
        default_grid=grid,
    )


def ho_problem(omega: float = 1.0, e_max: float = 6.0, n_points: int = 4001) -> SLProblem:
    """1D oscillator truncated where the well is 25 units above e_max."""
    x_max = math.sqrt(2.0 * (e_max + 25.0)) / omega
    grid = GridSpec.with_points(-x_max, x_max, n_points)
    return SLProblem(
        potential=lambda x: 0.5 * omega**2 * np.asarray(x, dtype=float) ** 2,
        domain=(-x_max, x_max),
        boundary="decay",
        default_grid=grid,
    )


def hydrogen_problem(l: int = 0, n_max: int = 3, step: float = 2e-3) -> SLProblem:
    """Radial Coulomb problem in Rydberg units; spectrum is -1/n^2.

    The domain ends a dozen decay lengths past the outer turning point of
    the highest requested level (the Coulomb tail never climbs 25 Ry, so
    the generic truncation rule does not apply).
    """
    r_max = hydrogen_turning_radius(n_max, l) + 12.0 * n_max
    n_pts = int(round(r_max / step))
    grid = GridSpec.with_points(step, r_max, n_pts)
    return SLProblem(
        potential=lambda r: -2.0 / np.asarray(r, dtype=float),
        domain=(0.0, r_max),
        boundary="radial",
        angular_momentum=l,
        mass_factor=1.0,
        coulomb_strength=2.0,
        default_grid=grid,
    )


def iso_ho_problem(
    omega: float = 1.0, l: int = 0, e_max: float = 6.0, n_points: int = 6001
) -> SLProblem:
    """Radial 3D oscillator in natural units with centrifugal barrier."""
    r_max = math.sqrt(2.0 * (e_max + 25.0)) / omega
    grid = GridSpec.with_points(r_max / n_points, r_max, n_points)
    return SLProblem(
        potential=lambda r: 0.5 * omega**2 * np.asarray(r, dtype=float) ** 2,
        domain=(0.0, r_max),
        boundary="radial",
        angular_momentum=l,
        default_grid=grid,
    )

"""Command-line surface: CSV serialization and the verification runner.

Subcommands:

* ``eigenstate``  sample one stationary state on a grid
* ``spectrum``    analytic vs shooting-method energies per family
* ``bic``         continuum-embedded state: s, f, V, psi and residual
* ``oldquantum``  quantized circles, phase-space levels, line wavelengths
* ``verify``      run the cross-verification suite and report PASS/FAIL

All numeric output uses 12-significant-digit scientific notation and LF
line endings; repeated runs with the same arguments are byte-identical.
Exit codes: 0 success, 1 verification failure, 2 bad arguments, 3 I/O
failure, 4 solver non-convergence, 5 residual tolerance exceeded.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import bic, oldquantum, sturm, verification, wells
from .errors import BracketError, ConvergenceError, GridTooCoarseError

__all__ = ["main", "EigenstateRequest", "render_eigenstate_csv"]

_EXIT_VERIFY_FAIL = 1
_EXIT_BAD_ARGS = 2
_EXIT_IO = 3
_EXIT_NO_CONVERGENCE = 4
_EXIT_RESIDUAL = 5

_FAMILIES = ("box", "ho1d", "hydrogen", "iso_ho")
_SCHEME_ALIASES = {
    "sh": "stillinger_herrick",
    "vnw": "von_neumann_wigner",
    "stillinger_herrick": "stillinger_herrick",
    "darboux": "darboux",
    "von_neumann_wigner": "von_neumann_wigner",
}


def _fmt(v: float) -> str:
    return f"{v:.11e}"


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:end:points, got {text!r}")
    start, end = float(parts[0]), float(parts[1])
    points = int(parts[2])
    if points != float(parts[2]):
        raise ValueError(f"grid point count must be an integer, got {parts[2]!r}")
    if points < 2 or end <= start:
        raise ValueError(f"grid needs end > start and at least 2 points, got {text!r}")
    return start, end, points


def _parse_tolerances(pairs: list[str] | None) -> dict[str, float]:
    out: dict[str, float] = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ValueError(f"tolerance must be key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        out[key.strip()] = float(value)
    return out


def _unit_factors(family: str, units: str) -> tuple[float, float]:
    """(energy factor, length factor) from the family's native units."""
    c = wells.CONSTANTS
    native_is_rydberg = family == "hydrogen"
    if units == "natural":
        return 1.0, 1.0
    if units == "rydberg":
        return (1.0, 1.0) if native_is_rydberg else (2.0, 1.0)
    if units == "ev":
        e = c.rydberg_ev if native_is_rydberg else c.hartree_ev
        return e, c.bohr_radius_angstrom
    raise ValueError(f"unknown unit system {units!r}")


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# eigenstate


@dataclass(frozen=True)
class EigenstateRequest:
    family: str
    n: int
    l: int = 0
    m: int = 0
    width: float = 1.0
    omega: float = 1.0
    theta: float = 1.0
    phi: float = 0.0
    units: str = "natural"
    grid: tuple[float, float, int] | None = None


def _default_grid(req: EigenstateRequest) -> tuple[float, float, int]:
    if req.family == "box":
        return -req.width / 2.0, req.width / 2.0, 1001
    if req.family == "ho1d":
        span = 5.0 / math.sqrt(req.omega)
        return -span, span, 1001
    if req.family == "hydrogen":
        return 0.0, wells.hydrogen_turning_radius(req.n, req.l) + 12.0 * req.n, 1001
    span = math.sqrt(2.0 * (2 * req.n + req.l + 1.5) + 20.0) / math.sqrt(req.omega)
    return 0.0, span, 1001


def render_eigenstate_csv(req: EigenstateRequest) -> str:
    if req.family not in _FAMILIES:
        raise ValueError(f"unknown family {req.family!r}")
    state = wells.stationary_state(
        req.family,
        req.n,
        req.l,
        req.m,
        box=wells.BoxSpec(req.width),
        osc=wells.OscSpec(req.omega),
    )
    start, end, points = req.grid or _default_grid(req)
    radial = req.family in ("hydrogen", "iso_ho")
    if radial and start < 0:
        raise ValueError("radial grids must start at r >= 0")
    _, length_f = _unit_factors(req.family, req.units)
    psi_f = length_f ** (-1.5 if radial else -0.5)

    x = np.linspace(start, end, points)
    psi = state(x, req.theta, req.phi) if radial else state(x)
    psi = np.asarray(psi) * psi_f
    dens = np.abs(psi) ** 2
    lines = ["x,psi_re,psi_im,prob_density"]
    for xi, pv, dv in zip(x * length_f, psi, dens):
        lines.append(f"{_fmt(xi)},{_fmt(float(np.real(pv)))},{_fmt(float(np.imag(pv)))},{_fmt(float(dv))}")
    return "\n".join(lines) + "\n"


def _cmd_eigenstate(args) -> int:
    req = EigenstateRequest(
        family=args.family,
        n=args.n,
        l=args.l,
        m=args.m,
        width=args.width,
        omega=args.omega,
        theta=args.theta,
        phi=args.phi,
        units=args.units,
        grid=_parse_grid(args.grid) if args.grid else None,
    )
    _write_output(render_eigenstate_csv(req), args.out)
    return 0


# ---------------------------------------------------------------------------
# spectrum


def _spectrum_rows(family: str, count: int, l: int, width: float, omega: float):
    """Yield (index, analytic E, shooting E, node count) in native units."""
    if family == "box":
        spec = wells.BoxSpec(width)
        problem = sturm.box_problem(width)
        for n in range(1, count + 1):
            res = sturm.shoot_eigenvalue(problem, n - 1)
            yield n, wells.box_energy(n, spec), res.energy, res.node_count
    elif family == "ho1d":
        spec = wells.OscSpec(omega)
        problem = sturm.ho_problem(omega, e_max=(count + 0.5) * omega)
        for n in range(count):
            res = sturm.shoot_eigenvalue(problem, n)
            yield n, wells.ho_energy(n, spec), res.energy, res.node_count
    elif family == "hydrogen":
        n_top = l + count
        for n in range(l + 1, n_top + 1):
            problem = sturm.hydrogen_problem(l, n_max=n)
            res = sturm.shoot_eigenvalue(problem, n - l - 1, bracket=(-1.5 / n**2, -0.6 / n**2))
            yield n, wells.hydrogen_energy(n), res.energy, res.node_count
    elif family == "iso_ho":
        spec = wells.OscSpec(omega)
        problem = sturm.iso_ho_problem(omega, l, e_max=(2 * count + l + 1.5) * omega)
        for n_r in range(count):
            res = sturm.shoot_eigenvalue(problem, n_r)
            yield n_r, wells.iso_ho_energy(wells.IsoOscQN(n_r, l), spec), res.energy, res.node_count
    else:
        raise ValueError(f"unknown family {family!r}")


def render_spectrum_csv(family: str, count: int, l: int, width: float, omega: float, units: str) -> str:
    if count < 1 or count > 10:
        raise ValueError("spectrum count must be between 1 and 10")
    energy_f, _ = _unit_factors(family, units)
    lines = ["n,analytic_E,numerov_E,abs_err,node_count"]
    for n, exact, got, nodes in _spectrum_rows(family, count, l, width, omega):
        err = abs(got - exact)
        lines.append(
            f"{n},{_fmt(exact * energy_f)},{_fmt(got * energy_f)},{_fmt(err * energy_f)},{nodes}"
        )
    return "\n".join(lines) + "\n"


def _cmd_spectrum(args) -> int:
    text = render_spectrum_csv(args.family, args.count, args.l, args.width, args.omega, args.units)
    _write_output(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# bic


def render_bic_csv(scheme: str, k: float, lam: float, grid: tuple[float, float, int], tol: float):
    spec = bic.BICSpec(scheme, k, lam)
    start, end, points = grid
    if start < 0:
        raise ValueError("bic grids must start at r >= 0")
    r = np.linspace(start, end, points)
    h = r[1] - r[0]
    s = bic.modulation_s(spec, r)
    f = bic.modulation_f(spec, r)
    v = bic.bic_potential(spec, r)
    psi = bic.bic_wavefunction(spec, r)

    u = r * psi
    resid = np.zeros_like(r)
    upp = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
    resid[1:-1] = np.abs(-0.5 * upp + (v[1:-1] - spec.energy) * u[1:-1]) / np.max(np.abs(u))
    max_res = float(np.max(resid))

    lines = ["r,s,f,V,psi,u_residual"]
    for i in range(points):
        lines.append(
            ",".join(_fmt(val) for val in (r[i], s[i], f[i], v[i], psi[i], resid[i]))
        )
    failed = max_res > tol
    footer = f"# E0={_fmt(spec.energy)} max_residual={max_res:.6e}"
    if failed:
        footer += f" FAILED tol={tol:.6e}"
    lines.append(footer)
    return "\n".join(lines) + "\n", failed


def _cmd_bic(args) -> int:
    scheme = _SCHEME_ALIASES.get(args.scheme)
    if scheme is None:
        raise ValueError(f"unknown scheme {args.scheme!r}")
    grid = _parse_grid(args.grid) if args.grid else (0.0, 25.0 / args.k, 50001)
    tol = _parse_tolerances(args.tolerance).get("residual", 1e-5)
    text, failed = render_bic_csv(scheme, args.k, args.lam, grid, tol)
    _write_output(text, args.out)
    return _EXIT_RESIDUAL if failed else 0


# ---------------------------------------------------------------------------
# oldquantum


def render_oldquantum_csv(n_max: int) -> str:
    if n_max < 1 or n_max > 20:
        raise ValueError("n_max must be between 1 and 20")
    lines = ["n,bohr_radius_aB,bohr_energy_eV,ws_ho_E"]
    for n in range(1, n_max + 1):
        lines.append(
            f"{n},{_fmt(oldquantum.bohr_radius(n))},{_fmt(oldquantum.bohr_energy(n, 'ev'))},"
            f"{_fmt(oldquantum.ws_quantize(lambda x: 0.5 * x * x, n))}"
        )
    lines.append("# transitions")
    lines.append("n_upper,n_lower,lambda_angstrom")
    for upper in range(2, n_max + 1):
        for lower in range(1, upper):
            lam = oldquantum.transition_wavelength(
                oldquantum.bohr_energy(upper, "ev"), oldquantum.bohr_energy(lower, "ev")
            )
            lines.append(f"{upper},{lower},{_fmt(lam)}")
    lines.append(f"# franck_hertz_line_angstrom={_fmt(oldquantum.transition_wavelength(4.89, 0.0))}")
    return "\n".join(lines) + "\n"


def _cmd_oldquantum(args) -> int:
    _write_output(render_oldquantum_csv(args.n_max), args.out)
    return 0


# ---------------------------------------------------------------------------
# verify


def _cmd_verify(args) -> int:
    tolerances = _parse_tolerances(args.tolerance)
    results = verification.run_checks(only=args.only, tolerances=tolerances)
    _write_output(verification.render_report(results), args.out)
    return 0 if all(r.passed for r in results) else _EXIT_VERIFY_FAIL


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwells",
        description="Stationary states of canonical wells: evaluate, cross-verify, export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--units", choices=("natural", "rydberg", "ev"), default="natural")
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("eigenstate", help="sample one stationary state as CSV")
    p.add_argument("--family", choices=_FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True, help="level index (radial index for iso_ho)")
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--width", type=float, default=1.0, help="box width")
    p.add_argument("--omega", type=float, default=1.0, help="oscillator frequency")
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--grid", default=None, help="start:end:points")
    add_common(p)
    p.set_defaults(func=_cmd_eigenstate)

    p = sub.add_parser("spectrum", help="analytic vs shooting energies as CSV")
    p.add_argument("--family", choices=_FAMILIES, required=True)
    p.add_argument("--count", type=int, default=5, help="number of levels (max 10)")
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--width", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)
    add_common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("bic", help="continuum-embedded bound state as CSV")
    p.add_argument("--scheme", default="stillinger_herrick",
                   help="stillinger_herrick | darboux | von_neumann_wigner (aliases sh, vnw)")
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--grid", default=None, help="start:end:points (default 0:25/k:50001)")
    p.add_argument("--tolerance", action="append", default=None, metavar="KEY=VALUE",
                   help="override residual=VALUE for the pass/fail footer")
    add_common(p)
    p.set_defaults(func=_cmd_bic)

    p = sub.add_parser("oldquantum", help="quantized circles and transition lines as CSV")
    p.add_argument("--n-max", dest="n_max", type=int, default=8)
    add_common(p)
    p.set_defaults(func=_cmd_oldquantum)

    p = sub.add_parser("verify", help="run the cross-verification suite")
    p.add_argument("--only", default=None, help=f"restrict to one group: {', '.join(verification.GROUPS)}")
    p.add_argument("--tolerance", action="append", default=None, metavar="KEY=VALUE")
    add_common(p)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BracketError, ConvergenceError) as exc:
        print(f"error: solver did not converge: {exc}", file=sys.stderr)
        return _EXIT_NO_CONVERGENCE
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return _EXIT_IO
    except (ValueError, GridTooCoarseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_BAD_ARGS


if __name__ == "__main__":
    sys.exit(main())

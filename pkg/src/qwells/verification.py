"""Cross-verification suite tying every construction to an independent route.

Each check compares a closed-form quantity against a result obtained a
different way (shooting integration, quadrature, enumeration, symbolic
differentiation of the defining relation) and records a measured value
against a tolerance. The same checks back the ``qwells verify`` command
and the acceptance test suite, so the report format is deterministic:
one line per check, fixed float formatting, stable ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bic, ladder, oldquantum, sturm, wells

__all__ = ["CheckResult", "DEFAULT_TOLERANCES", "GROUPS", "run_checks", "render_report"]


@dataclass(frozen=True)
class CheckResult:
    group: str
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return (
            f"{status} [{self.group}] {self.name}: "
            f"measured={self.measured:.6e} tol={self.tolerance:.6e}{extra}"
        )


DEFAULT_TOLERANCES: dict[str, float] = {
    "energy": 1e-6,            # box / 1D HO spectral recovery, relative
    "energy_radial": 1e-5,     # hydrogen / iso-HO spectral recovery, relative
    "norm": 1e-8,              # normalization and orthogonality
    "residual": 1e-5,          # analytic-state FD eigen-residual at h = 1e-3
    "residual_shrink": 3.5,    # required shrink factor when h is halved
    "commutator": 1e-12,
    "creation_chain": 1e-10,
    "raise_linf": 1e-5,
    "argmax_r": 1e-4,
    "moment": 1e-6,
    "action": 1e-8,
    "ws_energy": 1e-8,
    "wavelength": 2.0,         # angstroms around the 2536 A line
    "bic_consistency": 1e-9,
    "bic_residual": 1e-5,      # at h = 5e-4 and E0 = k^2/2
    "bic_tail": 1e-3,          # tail fraction of the norm integral past r = 200
    "bic_asymptote": 0.05,     # relative window around the -4k sin(2kr)/r tail
    "bic_identity": 1e-12,
}

_BIC_LAMBDAS = (0.5, 1.0, 5.0)
_RNG_SEED = 20250810


# ---------------------------------------------------------------------------
# criterion 1: spectral recovery


def _check_spectra(tol: dict) -> list[CheckResult]:
    out = []

    box = sturm.box_problem(math.pi)
    worst = 0.0
    for n in range(1, 6):
        got = sturm.shoot_eigenvalue(box, n - 1).energy
        exact = wells.box_energy(n, wells.BoxSpec(math.pi))
        worst = max(worst, abs(got - exact) / abs(exact))
    out.append(CheckResult("spectra", "box_first5_rel_err", worst <= tol["energy"], worst, tol["energy"]))

    ho = sturm.ho_problem(1.0)
    worst = 0.0
    for n in range(5):
        got = sturm.shoot_eigenvalue(ho, n).energy
        worst = max(worst, abs(got - wells.ho_energy(n)) / wells.ho_energy(n))
    out.append(CheckResult("spectra", "ho_first5_rel_err", worst <= tol["energy"], worst, tol["energy"]))

    worst = 0.0
    for n, l in ((1, 0), (2, 0), (2, 1), (3, 0)):
        prob = sturm.hydrogen_problem(l, n_max=n)
        got = sturm.shoot_eigenvalue(prob, n - l - 1, bracket=(-1.5 / n**2, -0.6 / n**2)).energy
        exact = wells.hydrogen_energy(n)
        worst = max(worst, abs(got - exact) / abs(exact))
    out.append(
        CheckResult("spectra", "hydrogen_rel_err", worst <= tol["energy_radial"], worst, tol["energy_radial"])
    )

    worst = 0.0
    for n_r, l in ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (0, 3)):
        prob = sturm.iso_ho_problem(1.0, l)
        got = sturm.shoot_eigenvalue(prob, n_r).energy
        exact = wells.iso_ho_energy(wells.IsoOscQN(n_r, l))
        worst = max(worst, abs(got - exact) / exact)
    out.append(
        CheckResult("spectra", "iso_ho_shells_rel_err", worst <= tol["energy_radial"], worst, tol["energy_radial"])
    )
    return out


# ---------------------------------------------------------------------------
# criterion 2: normalization and orthogonality by independent quadrature


def _gauss(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def _gram_deviation(fns, x: np.ndarray, w: np.ndarray) -> float:
    vals = np.array([f(x) for f in fns])
    gram = (vals * w) @ vals.T
    return float(np.max(np.abs(gram - np.eye(len(fns)))))


def _check_norms(tol: dict) -> list[CheckResult]:
    out = []
    spec_box = wells.BoxSpec(math.pi)
    x, w = _gauss(-spec_box.width / 2, spec_box.width / 2, 240)
    dev = _gram_deviation(
        [lambda xx, n=n: wells.box_wavefunction(n, xx, spec_box) for n in range(1, 7)], x, w
    )
    out.append(CheckResult("norms", "box_gram_dev", dev <= tol["norm"], dev, tol["norm"]))

    x, w = _gauss(-9.0, 9.0, 400)
    dev = _gram_deviation([lambda xx, n=n: wells.ho_wavefunction(n, xx) for n in range(6)], x, w)
    out.append(CheckResult("norms", "ho_gram_dev", dev <= tol["norm"], dev, tol["norm"]))

    r, w = wells.radial_quadrature(6, 0)
    dev = _gram_deviation(
        [lambda rr, n=n: wells.hydrogen_radial(n, 0, rr) * rr for n in range(1, 7)], r, w
    )
    out.append(CheckResult("norms", "hydrogen_l0_gram_dev", dev <= tol["norm"], dev, tol["norm"]))

    r, w = _gauss(0.0, 10.0, 400)
    dev = _gram_deviation(
        [lambda rr, n=n: wells.iso_ho_radial(wells.IsoOscQN(n, 0), rr) * rr for n in range(6)], r, w
    )
    out.append(CheckResult("norms", "iso_ho_l0_gram_dev", dev <= tol["norm"], dev, tol["norm"]))
    return out


# ---------------------------------------------------------------------------
# criterion 3: finite-difference eigen-residuals of the analytic states


def _fd_residual(u: np.ndarray, v_minus_e: np.ndarray, h: float, mass: float) -> float:
    upp = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
    res = -upp / mass + v_minus_e[1:-1] * u[1:-1]
    return float(np.max(np.abs(res)) / np.max(np.abs(u)))


def _family_residual(h: float) -> dict[str, float]:
    """Worst relative FD residual over the first six states of each family."""
    worst: dict[str, float] = {}

    spec = wells.BoxSpec(5.0)
    x = np.arange(-2.5, 2.5 + h / 2, h)
    worst["box"] = max(
        _fd_residual(
            wells.box_wavefunction(n, x, spec), -np.full_like(x, wells.box_energy(n, spec)), h, 2.0
        )
        for n in range(1, 7)
    )

    x = np.arange(-9.0, 9.0 + h / 2, h)
    v = 0.5 * x**2
    worst["ho1d"] = max(
        _fd_residual(wells.ho_wavefunction(n, x), v - wells.ho_energy(n), h, 2.0) for n in range(6)
    )

    r = np.arange(h, 60.0 + h / 2, h)
    v = -2.0 / r
    worst["hydrogen"] = max(
        _fd_residual(r * wells.hydrogen_radial(n, 0, r), v - wells.hydrogen_energy(n), h, 1.0)
        for n in range(1, 7)
    )

    r = np.arange(h, 9.0 + h / 2, h)
    worst_iso = 0.0
    for n_r, l in ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (0, 3)):
        qn = wells.IsoOscQN(n_r, l)
        v = 0.5 * r**2 + l * (l + 1) / (2.0 * r**2)
        res = _fd_residual(r * wells.iso_ho_radial(qn, r), v - wells.iso_ho_energy(qn), h, 2.0)
        worst_iso = max(worst_iso, res)
    worst["iso_ho"] = worst_iso
    return worst


def _check_residuals(tol: dict) -> list[CheckResult]:
    out = []
    res_h = _family_residual(1e-3)
    res_half = _family_residual(5e-4)
    for family in ("box", "ho1d", "hydrogen", "iso_ho"):
        out.append(
            CheckResult(
                "residuals",
                f"{family}_residual",
                res_h[family] <= tol["residual"],
                res_h[family],
                tol["residual"],
            )
        )
        shrink = res_h[family] / res_half[family]
        out.append(
            CheckResult(
                "residuals",
                f"{family}_residual_shrink",
                shrink >= tol["residual_shrink"],
                shrink,
                tol["residual_shrink"],
                detail="factor on halving h, must be at least tol",
            )
        )
    return out


# ---------------------------------------------------------------------------
# criterion 4: ladder algebra


def _check_ladder(tol: dict) -> list[CheckResult]:
    out = []
    defect = ladder.commutator_defect(40)
    out.append(CheckResult("ladder", "commutator_defect_d40", defect <= tol["commutator"], defect, tol["commutator"]))

    dim = 25
    _, adag = ladder.build_ladder(dim)
    vec = np.zeros(dim)
    vec[0] = 1.0
    worst = 0.0
    for n in range(1, 21):
        vec = adag @ vec
        unit = vec / math.sqrt(math.factorial(n))
        expect = np.zeros(dim)
        expect[n] = 1.0
        worst = max(worst, float(np.max(np.abs(unit - expect))))
    out.append(CheckResult("ladder", "creation_chain_n20", worst <= tol["creation_chain"], worst, tol["creation_chain"]))

    h = 1e-3
    x = np.arange(-9.0, 9.0 + h / 2, h)
    psi = ladder.coordinate_ground_state(x, 1.0)
    worst = 0.0
    for n in range(3):
        psi = ladder.coordinate_raise(x, psi, n, 1.0)
        worst = max(worst, float(np.max(np.abs(psi - wells.ho_wavefunction(n + 1, x)))))
    out.append(CheckResult("ladder", "coordinate_raise_linf", worst <= tol["raise_linf"], worst, tol["raise_linf"]))
    return out


# ---------------------------------------------------------------------------
# criterion 5: hydrogen observables


def _argmax_radial_probability(qn: wells.HydrogenQN) -> float:
    """Peak of P(r) by golden-section refinement of a coarse scan."""
    r = np.linspace(1e-3, 40.0 * qn.n**2, 4001)
    i = int(np.argmax(wells.radial_probability(qn, r)))
    lo, hi = r[max(i - 1, 0)], r[min(i + 1, r.size - 1)]
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c, d = b - phi * (b - a), a + phi * (b - a)
    for _ in range(200):
        if b - a < 1e-10:
            break
        if wells.radial_probability(qn, c) > wells.radial_probability(qn, d):
            b, d = d, c
            c = b - phi * (b - a)
        else:
            a, c = c, d
            d = a + phi * (b - a)
    return 0.5 * (a + b)

def _check_hydrogen(tol: dict) -> list[CheckResult]:
    out = []
    qn = wells.HydrogenQN(1)
    peak = _argmax_radial_probability(qn)
    err = abs(peak - 1.0)
    out.append(CheckResult("hydrogen", "argmax_p1s", err <= tol["argmax_r"], err, tol["argmax_r"]))

    err = abs(wells.radial_moment(qn, 1) - 1.5)
    out.append(CheckResult("hydrogen", "mean_r_1s", err <= tol["moment"], err, tol["moment"]))
    err = abs(wells.radial_moment(qn, -1) - 1.0)
    out.append(CheckResult("hydrogen", "mean_inv_r_1s", err <= tol["moment"], err, tol["moment"]))

    worst = 0
    for n in range(1, 11):
        worst = max(worst, abs(wells.degeneracy("hydrogen", n) - sum(2 * l + 1 for l in range(n))))
    out.append(CheckResult("hydrogen", "degeneracy_enumeration", worst == 0, float(worst), 0.0))

    worst = 0
    for big_n in range(11):
        count = sum(
            1
            for nx in range(big_n + 1)
            for ny in range(big_n + 1 - nx)
            if (big_n - nx - ny) >= 0
        )
        worst = max(worst, abs(wells.degeneracy("iso_ho", big_n) - count))
    out.append(CheckResult("hydrogen", "iso_degeneracy_enumeration", worst == 0, float(worst), 0.0))
    return out


# ---------------------------------------------------------------------------
# criterion 6: old-quantum checks


def _check_oldquantum(tol: dict) -> list[CheckResult]:
    out = []
    j = oldquantum.action_integral(oldquantum.ActionProblem(lambda x: 0.5 * x * x, 1.0))
    err = abs(j - 2.0 * math.pi)
    out.append(CheckResult("oldquantum", "ho_action_2piE", err <= tol["action"], err, tol["action"]))

    worst = 0.0
    for n in (1, 2, 3):
        e_ws = oldquantum.ws_quantize(lambda x: 0.5 * x * x, n)
        worst = max(worst, abs(e_ws - n))
        worst = max(worst, abs((wells.ho_energy(n) - e_ws) - 0.5))
    out.append(
        CheckResult(
            "oldquantum", "ws_ho_spectrum", worst <= tol["ws_energy"], worst, tol["ws_energy"],
            detail="includes the half-quantum offset from the wave-mechanical levels",
        )
    )

    lam = oldquantum.transition_wavelength(4.89, 0.0)
    err = abs(lam - 2536.0)
    out.append(CheckResult("oldquantum", "mercury_line_angstrom", err <= tol["wavelength"], err, tol["wavelength"]))

    err = abs(wells.hydrogen_energy(1, "ev") - (-13.606))
    out.append(CheckResult("oldquantum", "ground_level_ev", err <= 1e-12, err, 1e-12))
    return out


# ---------------------------------------------------------------------------
# criterion 7: bound states in the continuum


def _bic_symbolic_reference(spec: bic.BICSpec, r: np.ndarray) -> np.ndarray:
    """Potential from the defining relation with hand-derived s', s''."""
    k, lam = spec.k, spec.lam
    s = bic.modulation_s(spec, r)
    sin2 = np.sin(k * r) ** 2
    sin_2kr = np.sin(2.0 * k * r)
    if spec.scheme == "stillinger_herrick":
        sp = 8.0 * k**2 * r * sin2
        spp = 8.0 * k**2 * sin2 + 8.0 * k**3 * r * sin_2kr
    elif spec.scheme == "darboux":
        sp = sin2
        spp = k * sin_2kr
    else:
        root_s = np.sqrt(s)
        sp = 8.0 * k * root_s * sin2
        spp = 32.0 * k**2 * sin2**2 + 8.0 * k**2 * root_s * sin_2kr
    den = lam + s
    return -k / np.tan(k * r) * sp / den - spp / (2.0 * den) + sp**2 / den**2


def _simpson_uniform(y: np.ndarray, h: float) -> float:
    n = len(y)
    if n % 2 == 0:
        raise ValueError("need an odd sample count")
    return float(h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum()))


def _bic_norm_tail(spec: bic.BICSpec) -> float:
    """Fraction of the norm integral of u = r psi lying beyond r = 200."""
    k = spec.k
    h1 = 2.5e-3 / k
    r1 = np.arange(0.0, 200.0 / k + h1 / 2, h1)
    u1 = r1 * bic.bic_wavefunction(spec, r1)
    head = _simpson_uniform(u1**2, h1)

    h2 = 0.05 / k
    r2 = np.arange(200.0 / k, 20000.0 / k + h2 / 2, h2)
    u2 = r2 * bic.bic_wavefunction(spec, r2)
    tail = _simpson_uniform(u2**2, h2)
    # period-averaged analytic remainder past the far cutoff
    f_end = bic.modulation_f(spec, r2[-1])
    tail += f_end**2 * r2[-1] / (2.0 * k**2)
    return tail / (head + tail)


def _check_bic(tol: dict) -> list[CheckResult]:
    out = []
    k = 1.0
    rng = np.random.default_rng(_RNG_SEED)
    r_pool = rng.uniform(0.3, 40.0, 400)
    r_pts = r_pool[np.abs(np.sin(k * r_pool)) > 1e-2][:100]

    for scheme in bic.SCHEMES:
        for lam in _BIC_LAMBDAS:
            spec = bic.BICSpec(scheme, k, lam)
            tag = f"{scheme}_lam{lam:g}"

            dev = float(np.max(np.abs(bic.bic_potential(spec, r_pts) - _bic_symbolic_reference(spec, r_pts))))
            out.append(
                CheckResult("bic", f"consistency_{tag}", dev <= tol["bic_consistency"], dev, tol["bic_consistency"])
            )

            res = bic.verify_eigen_residual(spec, r_max=25.0 / k, step=5e-4 / k)
            out.append(CheckResult("bic", f"residual_{tag}", res <= tol["bic_residual"], res, tol["bic_residual"]))

            nodes = np.pi / k * np.arange(1, 51)
            v_nodes = bic.bic_potential(spec, nodes)
            finite = bool(np.all(np.isfinite(v_nodes)))
            vmax = float(np.max(np.abs(v_nodes)))
            out.append(
                CheckResult("bic", f"node_boundedness_{tag}", finite, vmax, math.inf,
                            detail="max |V| over the first 50 free-wave nodes")
            )

            frac = _bic_norm_tail(spec)
            out.append(CheckResult("bic", f"tail_fraction_{tag}", frac <= tol["bic_tail"], frac, tol["bic_tail"]))

            rr = np.linspace(100.0 / k, 200.0 / k, 20001)
            v = bic.bic_potential(spec, rr)
            basis = -k * np.sin(2.0 * k * rr) / rr
            coeff = float(np.dot(v, basis) / np.dot(basis, basis))
            rel = abs(coeff - 4.0 * k) / (4.0 * k)
            out.append(
                CheckResult("bic", f"asymptote_{tag}", rel <= tol["bic_asymptote"], rel, tol["bic_asymptote"],
                            detail=f"fitted amplitude {coeff:.4f} against 4k")
            )

    # unmodulated norm integral grows linearly, the reason modulation exists
    h = 1e-3 / k
    r_a = np.arange(0.0, 200.0 / k + h / 2, h)
    r_b = np.arange(0.0, 400.0 / k + h / 2, h)
    i_a = _simpson_uniform(np.sin(k * r_a) ** 2, h)
    i_b = _simpson_uniform(np.sin(k * r_b) ** 2, h)
    growth = i_b / i_a
    out.append(
        CheckResult("bic", "unmodulated_linear_growth", abs(growth - 2.0) <= 0.05, growth, 2.0,
                    detail="norm integral ratio for doubled range")
    )

    lams = np.linspace(0.0, 60.0, 4801)
    sd = bic.modulation_s(bic.BICSpec("darboux", k, 1.0), lams)
    sv = bic.modulation_s(bic.BICSpec("von_neumann_wigner", k, 1.0), lams)
    dev = float(np.max(np.abs(sv - (4.0 * k * sd) ** 2)))
    out.append(CheckResult("bic", "vnw_identity", dev <= tol["bic_identity"], dev, tol["bic_identity"]))
    return out


# ---------------------------------------------------------------------------
# criterion 8: determinism of rendered outputs


def _check_determinism(tol: dict) -> list[CheckResult]:
    from . import cli

    first = cli.render_eigenstate_csv(cli.EigenstateRequest(family="ho1d", n=2, grid=(-5.0, 5.0, 501)))
    second = cli.render_eigenstate_csv(cli.EigenstateRequest(family="ho1d", n=2, grid=(-5.0, 5.0, 501)))
    same = first == second
    out = [CheckResult("determinism", "eigenstate_csv_rerender", same, 0.0 if same else 1.0, 0.0)]

    r1 = _check_spectra(DEFAULT_TOLERANCES)[0]
    r2 = _check_spectra(DEFAULT_TOLERANCES)[0]
    same = r1.line() == r2.line()
    out.append(CheckResult("determinism", "spectral_check_rerun", same, 0.0 if same else 1.0, 0.0))
    return out


GROUPS = {
    "spectra": _check_spectra,
    "norms": _check_norms,
    "residuals": _check_residuals,
    "ladder": _check_ladder,
    "hydrogen": _check_hydrogen,
    "oldquantum": _check_oldquantum,
    "bic": _check_bic,
    "determinism": _check_determinism,
}


def run_checks(only: str | None = None, tolerances: dict[str, float] | None = None) -> list[CheckResult]:
    """Run the verification suite, optionally one group, with overrides."""
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        unknown = set(tolerances) - set(tol)
        if unknown:
            raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
        tol.update(tolerances)
    if only is not None and only not in GROUPS:
        raise ValueError(f"unknown check group {only!r}; choose from {sorted(GROUPS)}")
    results: list[CheckResult] = []
    for name, fn in GROUPS.items():
        if only is None or name == only:
            results.extend(fn(tol))
    return results


def render_report(results: list[CheckResult]) -> str:
    lines = [r.line() for r in results]
    n_pass = sum(r.passed for r in results)
    lines.append(f"# {n_pass}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"

"""Acceptance-criteria suite shared by `edgewall validate` and the test suite.

Each criterion is a self-contained callable returning (passed, details).  The
quick variants shrink grids or run fewer parameter pairs; whenever a tolerance
is loosened, the details string says so explicitly.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .analysis import boundary_slope, diagnostics, fit_decay
from .dynamics import (
    RelaxationConfig,
    analytic_zero_nu_profile,
    el_residual,
    initial_profile,
    relax,
)
from .energy import (
    Profile,
    energy_lower_bound,
    local_energy,
    nonlocal_three_ways,
    renormalized_energy,
)
from .grid import make_stretched_grid, make_uniform_grid
from .operators import Extension, Field, half_laplacian_pv, half_laplacian_spectral
from .params import MaterialParams, ModelParams, derive_scales


@dataclass(frozen=True)
class CriterionResult:
    passed: bool
    details: str


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    description: str
    func: object  # callable(quick: bool) -> CriterionResult

    def run(self, quick: bool = False) -> CriterionResult:
        return self.func(quick)


def _relax_seeded(beta, nu, grid, tol=1e-8):
    params = ModelParams(beta=beta, nu=nu)
    return relax(params, grid, initial_profile(beta, grid), RelaxationConfig(tol=tol))


# ---------------------------------------------------------------- criterion 1


def _c1_scales(quick: bool) -> CriterionResult:
    permalloy = MaterialParams(
        saturation_magnetization=8.0e5,
        exchange_constant=1.3e-11,
        anisotropy_constant=5.0e2,
        thickness=4.0e-9,
    )
    s = derive_scales(permalloy)
    ell_nm = s.exchange_length * 1e9
    width_nm = s.bloch_width * 1e9
    ok = abs(ell_nm - 5.69) <= 0.01 and abs(width_nm - 161.0) <= 1.0 and abs(s.nu - 20.0) <= 0.1
    return CriterionResult(
        ok,
        f"exchange length {ell_nm:.4f} nm (want 5.69 +- 0.01), "
        f"Bloch width {width_nm:.2f} nm (want 161 +- 1), nu {s.nu:.4f} (want 20 +- 0.1)",
    )


# ---------------------------------------------------------------- criterion 2


def _c2_analytic_regression(quick: bool) -> CriterionResult:
    grid = make_uniform_grid(0.05, 40.0)
    betas = (math.pi / 4,) if quick else (math.pi / 8, math.pi / 4)
    worst = 0.0
    for beta in betas:
        result = _relax_seeded(beta, 0.0, grid, tol=1e-10)
        if not result.converged:
            return CriterionResult(False, f"relax did not converge at beta={beta:.4f}, nu=0")
        exact = analytic_zero_nu_profile(beta, grid).theta
        worst = max(worst, float(np.max(np.abs(result.profile.theta - exact))))
    note = " (quick: pi/4 only)" if quick else ""
    return CriterionResult(
        worst <= 1e-3,
        f"sup error vs closed-form zero-stray-field wall {worst:.2e} (tol 1e-3){note}",
    )


# ---------------------------------------------------------------- criterion 3


def _c3_energy_bound(quick: bool) -> CriterionResult:
    grid = make_uniform_grid(0.05, 40.0)
    worst_eq = 0.0
    for beta in (math.pi / 8, math.pi / 4, math.pi / 2):
        e0 = local_energy(analytic_zero_nu_profile(beta, grid))
        worst_eq = max(worst_eq, abs(e0 - energy_lower_bound(beta)))
    count = 10 if quick else 50
    rng = np.random.default_rng(20260822)
    x = grid.nodes
    min_margin = math.inf
    for _ in range(count):
        beta = float(rng.uniform(0.05, math.pi / 2))
        theta = beta * np.exp(-float(rng.uniform(0.3, 3.0)) * x)
        for _ in range(3):
            amp = float(rng.uniform(-0.5, 0.5))
            width = float(rng.uniform(0.5, 5.0))
            center = float(rng.uniform(0.0, 20.0))
            theta = theta + amp * x * np.exp(-(((x - center) / width) ** 2)) / (1.0 + x)
        theta[0] = beta
        margin = local_energy(Profile(grid=grid, theta=theta, beta=beta)) - energy_lower_bound(beta)
        min_margin = min(min_margin, margin)
    ok = worst_eq <= 1e-3 and min_margin >= 0.0
    return CriterionResult(
        ok,
        f"closed-form wall energy off bound by {worst_eq:.2e} (tol 1e-3); "
        f"{count} random admissible profiles, min margin above bound {min_margin:.4f}",
    )


# ---------------------------------------------------------------- criterion 4


def _c4_operator_oracle(quick: bool) -> CriterionResult:
    def rel_sup_vs_spectral(dx, pad):
        grid = make_uniform_grid(dx, 80.0)
        u = np.exp(-((grid.nodes - 40.0) ** 2))
        pv = half_laplacian_pv(Field(grid, u), Extension(0.0, "zero")).values
        if pad == 1:
            sp = half_laplacian_spectral(Field(grid, u)).values
        else:
            wide = make_uniform_grid(dx, pad * 80.0)
            uw = np.zeros(len(wide))
            uw[: len(u)] = u
            sp = half_laplacian_spectral(Field(wide, uw)).values[: len(u)]
        return float(np.max(np.abs(pv - sp)) / np.max(np.abs(sp)))

    base = rel_sup_vs_spectral(0.05, 1)
    if quick:
        return CriterionResult(
            base <= 1e-3,
            f"Gaussian bump, dx=0.05: rel sup error {base:.2e} (tol 1e-3); quick: refinement leg skipped",
        )
    # Refinement leg against a 4x zero-padded oracle, which removes the
    # oracle's own periodization floor so the quadrature order is visible.
    errs = [rel_sup_vs_spectral(dx, 4) for dx in (0.2, 0.1, 0.05)]
    orders = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
    ok = base <= 1e-3 and all(o >= 1.0 for o in orders)
    return CriterionResult(
        ok,
        f"Gaussian bump, dx=0.05: rel sup error {base:.2e} (tol 1e-3); "
        f"refinement errors {errs[0]:.1e}/{errs[1]:.1e}/{errs[2]:.1e}, "
        f"orders {orders[0]:.2f}, {orders[1]:.2f} (need >= 1)",
    )


# ---------------------------------------------------------------- criterion 5


def _c5_appendix_identities(quick: bool) -> CriterionResult:
    dx = 0.04 if quick else 0.02
    tol = 4e-4 if quick else 1e-4
    grid = make_uniform_grid(dx, 48.0)
    m = np.exp(-(((grid.nodes - 24.0) / 2.0) ** 2))
    m[0] = 0.0
    m[-1] = 0.0
    three = nonlocal_three_ways(Field(grid, m))
    vals = [three.log_kernel, three.spectral, three.gagliardo]
    worst = max(
        abs(vals[i] - vals[j]) / abs(vals[j])
        for i in range(3)
        for j in range(3)
        if i != j
    )
    note = f" (quick: dx={dx}, tol loosened to {tol:g})" if quick else ""
    return CriterionResult(
        worst <= tol,
        f"log-kernel {vals[0]:.8f}, spectral {vals[1]:.8f}, Gagliardo {vals[2]:.8f}; "
        f"max pairwise rel diff {worst:.2e} (tol {tol:g}){note}",
    )


# ---------------------------------------------------------------- criterion 6


def _c6_boundary_slope(quick: bool) -> CriterionResult:
    if quick:
        grid = make_stretched_grid(0.05, 20.0, 1000.0)
        pairs = [(math.pi / 4, 1.0)]
        note = " (quick: single pair, dx0=0.05)"
    else:
        # dx0=0.01: the slope stencil must resolve the logarithmic curvature
        # blow-up at the edge, whose O(h log h) footprint at dx0=0.125 would
        # exceed the tolerance for nu=10.
        grid = make_stretched_grid(0.01, 20.0, 1000.0)
        pairs = [(b, n) for b in (math.pi / 8, math.pi / 4, math.pi / 2) for n in (1.0, 10.0)]
        note = ""
    worst = 0.0
    for beta, nu in pairs:
        result = _relax_seeded(beta, nu, grid)
        if not result.converged:
            return CriterionResult(False, f"relax did not converge at beta={beta:.4f}, nu={nu}")
        dev = abs(abs(boundary_slope(result.profile)) - math.sin(beta))
        worst = max(worst, dev)
    return CriterionResult(
        worst <= 2e-2,
        f"worst | |slope(0)| - sin(beta) | = {worst:.2e} over {len(pairs)} runs (tol 2e-2){note}",
    )


# ---------------------------------------------------------------- criterion 7


def _c7_tail_laws(quick: bool) -> CriterionResult:
    grid = make_stretched_grid(0.125, 20.0, 1000.0)
    pairs = [(math.pi / 4, 1.0)] if quick else [
        (b, n) for b in (math.pi / 8, math.pi / 4) for n in (1.0, 10.0)
    ]
    exponents = []
    for beta, nu in pairs:
        result = _relax_seeded(beta, nu, grid, tol=1e-10)
        if not result.converged:
            return CriterionResult(False, f"relax did not converge at beta={beta:.4f}, nu={nu}")
        fits = fit_decay(result.profile, (50.0, 500.0))
        exponents.append(fits.power.exponent_or_rate)
    power_ok = all(abs(e + 1.0) <= 0.15 for e in exponents)

    result = _relax_seeded(math.pi / 2, 1.0, grid, tol=1e-10)
    fits = fit_decay(result.profile, (10.0, 40.0))
    exp_beats = fits.exponential.r_squared > fits.power.r_squared
    note = " (quick: single power pair)" if quick else ""
    exps = ", ".join(f"{e:.3f}" for e in exponents)
    return CriterionResult(
        power_ok and exp_beats,
        f"power exponents [{exps}] on window [50,500] (want -1 +- 0.15); "
        f"beta=pi/2: exponential r2 {fits.exponential.r_squared:.5f} vs power r2 "
        f"{fits.power.r_squared:.5f}{note}",
    )


# ---------------------------------------------------------------- criterion 8


def _c8_small_nu(quick: bool) -> CriterionResult:
    grid = make_stretched_grid(0.05, 20.0, 200.0)
    beta = math.pi / 4
    nus = (0.3, 0.03) if quick else (1.0, 0.3, 0.1, 0.03)
    theta0 = analytic_zero_nu_profile(beta, grid).theta
    sups = []
    for nu in nus:
        result = _relax_seeded(beta, nu, grid, tol=1e-10)
        if not result.converged:
            return CriterionResult(False, f"relax did not converge at nu={nu}")
        sups.append(float(np.max(np.abs(result.profile.theta - theta0))))
    decreasing = all(a > b for a, b in zip(sups, sups[1:]))
    ok = decreasing and sups[-1] <= 0.05
    seq = ", ".join(f"{s:.4f}" for s in sups)
    note = " (quick: two nu values)" if quick else ""
    return CriterionResult(
        ok,
        f"sup|theta_nu - theta_0| = [{seq}] along nu={list(nus)}; "
        f"strictly decreasing: {decreasing}, last <= 0.05{note}",
    )


# ---------------------------------------------------------------- criterion 9


def _c9_small_beta(quick: bool) -> CriterionResult:
    grid = make_stretched_grid(0.05, 20.0, 1000.0)
    betas = (0.4, 0.1) if quick else (0.4, 0.2, 0.1, 0.05)
    sups = []
    ratios = []
    for beta in betas:
        result = _relax_seeded(beta, 10.0, grid, tol=1e-10)
        if not result.converged:
            return CriterionResult(False, f"relax did not converge at beta={beta}")
        sups.append(float(np.max(np.abs(result.profile.theta))))
        ratios.append(local_energy(result.profile) / beta**2)
    decreasing = all(a > b for a, b in zip(sups, sups[1:]))
    spread = max(ratios) / min(ratios)
    ok = decreasing and spread < 3.0
    note = " (quick: two beta values)" if quick else ""
    return CriterionResult(
        ok,
        f"sup|theta| = {[round(s, 4) for s in sups]} decreasing: {decreasing}; "
        f"local energy / beta^2 spread factor {spread:.3f} (need < 3){note}",
    )


# --------------------------------------------------------------- criterion 10


def _c10_winding(quick: bool) -> CriterionResult:
    grid = make_stretched_grid(0.125, 20.0, 1000.0)
    winding_betas = (3 * math.pi / 2,) if quick else (3 * math.pi / 2, 5 * math.pi / 2)
    report = []
    ok = True
    for beta in winding_betas:
        result = _relax_seeded(beta, 10.0, grid)
        diag = diagnostics(result.profile)
        good = result.converged and diag.theta_infinity == 0.0 and diag.winding_flag
        ok = ok and good
        report.append(
            f"beta={beta:.4f}: theta_inf={diag.theta_infinity:g}, winding={diag.winding_flag}"
        )
    result = _relax_seeded(-3 * math.pi / 4, 10.0, grid)
    diag = diagnostics(result.profile)
    ok = ok and result.converged and diag.overshoot_flag
    report.append(f"beta=-3pi/4: overshoot={diag.overshoot_flag}")
    note = " (quick: 5pi/2 skipped)" if quick else ""
    return CriterionResult(ok, "; ".join(report) + note)


# --------------------------------------------------------------- criterion 11


def _c11_gradient_check(quick: bool) -> CriterionResult:
    grid = make_stretched_grid(0.05, 20.0, 60.0)
    beta = math.pi / 4
    params = ModelParams(beta=beta, nu=3.0)
    rng = np.random.default_rng(7)
    theta = initial_profile(beta, grid).theta.copy()
    theta[1:] += 0.05 * rng.standard_normal(len(grid) - 1)
    profile = Profile(grid=grid, theta=theta, beta=beta)
    residual = el_residual(profile, params).values
    w = grid.weights
    count = 4 if quick else 10
    nodes = rng.choice(np.arange(1, len(grid) - 1), size=count, replace=False)
    step = 1e-6
    worst = 0.0
    for i in nodes:
        up = theta.copy()
        up[i] += step
        down = theta.copy()
        down[i] -= step
        e_up = renormalized_energy(Profile(grid=grid, theta=up, beta=beta), params)
        e_down = renormalized_energy(Profile(grid=grid, theta=down, beta=beta), params)
        fd = -(e_up.total_renormalized - e_down.total_renormalized) / (2.0 * step) / w[i]
        worst = max(worst, abs(fd - residual[i]) / max(1.0, abs(residual[i])))
    note = " (quick: 4 nodes)" if quick else ""
    return CriterionResult(
        worst <= 1e-4,
        f"flow residual vs central-difference energy gradient at {count} random "
        f"interior nodes: max rel error {worst:.2e} (tol 1e-4){note}",
    )


CRITERIA = [
    Criterion(1, "scales", "dimensionless scales from permalloy constants", _c1_scales),
    Criterion(2, "analytic-regression", "relax at nu=0 matches the closed-form wall", _c2_analytic_regression),
    Criterion(3, "energy-bound", "local energy bound and its sharpness", _c3_energy_bound),
    Criterion(4, "operator-oracle", "PV half-Laplacian vs spectral oracle", _c4_operator_oracle),
    Criterion(5, "appendix-identities", "three nonlocal representations agree", _c5_appendix_identities),
    Criterion(6, "boundary-slope", "edge slope law |slope| = sin(beta)", _c6_boundary_slope),
    Criterion(7, "tail-laws", "1/x tails, exponential at beta=pi/2", _c7_tail_laws),
    Criterion(8, "small-nu-limit", "uniform convergence to the local wall", _c8_small_nu),
    Criterion(9, "small-beta-limit", "profiles shrink like beta, energy like beta^2", _c9_small_beta),
    Criterion(10, "winding", "winding steady states and overshoot", _c10_winding),
    Criterion(11, "gradient-check", "flow residual is the exact energy gradient", _c11_gradient_check),
]


def get_criteria():
    return list(CRITERIA)


def run_suite(only: str | None = None, quick: bool = False, stream=None) -> bool:
    """Run (a filtered subset of) the criteria, print one line each, return
    True iff everything selected passed."""
    stream = stream if stream is not None else sys.stdout
    selected = CRITERIA
    if only:
        token = only.strip().lower()
        selected = [
            c for c in CRITERIA if token == str(c.number) or token in c.name.lower()
        ]
        if not selected:
            print(f"no criterion matches --only {only!r}", file=stream)
            return False
    all_passed = True
    for criterion in selected:
        result = criterion.run(quick=quick)
        all_passed = all_passed and result.passed
        status = "PASS" if result.passed else "FAIL"
        print(
            f"{status} criterion {criterion.number:2d} [{criterion.name}]: {result.details}",
            file=stream,
        )
    return all_passed

"""Gradient-flow relaxation to steady wall profiles, and the steady-state residual.

The flow is

    theta_t = theta_xx - sin(theta) cos(theta)
              - (nu/2) cos(theta - beta) * halfLaplacian[sin(theta - beta)]

with theta(0) = beta clamped and zero slope at the truncated right end.  The
half-Laplacian sees sin(theta - beta) continued by zero to the left (theta
equals beta there) and by its last sample to the right; its half-line part is
applied through the energy module's quadratic form, so the discrete flow is the
exact (weighted) negative gradient of the discrete renormalized energy.  One
consequence is that the steady-state residual of the scheme vanishes exactly at
fixed points of the stepper; another is monotone energy decay for stable dt.

Time stepping is semi-implicit: the stiff Laplacian is solved implicitly
(tridiagonal), everything else is explicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .energy import Profile, get_nonlocal_form, renormalized_energy
from .errors import DivergenceError, DomainError, StabilityError
from .grid import Grid
from .operators import Field
from .params import ModelParams

#: consecutive energy-increase samples tolerated before declaring instability
_RISE_LIMIT = 10


@dataclass(frozen=True)
class RelaxationConfig:
    """Stepping control.  dt=None picks min(0.05, h_min/(1 + nu)), balancing the
    implicit diffusion (unconditionally stable) against the explicit nonlocal
    term whose stiffness grows like nu over the smallest spacing."""

    dt: float | None = None
    tol: float = 1e-8
    max_steps: int = 200000
    report_every: int = 500

    def __post_init__(self):
        if self.dt is not None and not self.dt > 0.0:
            raise DomainError(f"dt must be positive, got {self.dt!r}")
        if not self.tol > 0.0:
            raise DomainError(f"tol must be positive, got {self.tol!r}")
        if self.max_steps < 1:
            raise DomainError(f"max_steps must be >= 1, got {self.max_steps!r}")
        if self.report_every < 1:
            raise DomainError(f"report_every must be >= 1, got {self.report_every!r}")


@dataclass(frozen=True)
class RelaxationResult:
    profile: Profile
    steps_taken: int
    final_residual: float
    energy_history: list
    converged: bool

    def __post_init__(self):
        history = [(int(s), float(e)) for s, e in self.energy_history]
        object.__setattr__(self, "energy_history", history)


def initial_profile(beta: float, grid: Grid) -> Profile:
    """Smooth monotone seed 2 beta / (1 + exp(x/2)); equals beta at the edge.

    Evaluated as beta (1 - tanh(x/4)), the same function without overflow on
    far-field nodes.
    """
    theta = beta * (1.0 - np.tanh(grid.nodes / 4.0))
    theta[0] = beta
    return Profile(grid=grid, theta=theta, beta=beta)


def analytic_zero_nu_profile(beta: float, grid: Grid) -> Profile:
    """Exact stray-field-free wall 2 arctan(exp(-x) tan(beta/2)), for |beta| < pi."""
    if not abs(beta) < math.pi:
        raise DomainError(f"closed-form profile needs |beta| < pi, got {beta!r}")
    theta = 2.0 * np.arctan(np.exp(-grid.nodes) * math.tan(beta / 2.0))
    theta[0] = beta
    return Profile(grid=grid, theta=theta, beta=beta)


def _laplacian_stencils(grid: Grid):
    """Coefficients (lower, diag, upper) of the variational second derivative at
    interior nodes: the same tridiagonal form whose quadratic form is the
    discrete exchange energy, so flow and energy agree exactly."""
    h = grid.spacings
    hl, hr = h[:-1], h[1:]
    lower = 2.0 / (hl * (hl + hr))
    diag = -2.0 / (hl * hr)
    upper = 2.0 / (hr * (hl + hr))
    return lower, diag, upper


def _apply_laplacian(theta: np.ndarray, stencils, h_last: float) -> np.ndarray:
    """Variational Laplacian: 3-point stencils inside, and at the last node the
    natural zero-flux row 2 (theta_{N-1} - theta_N) / h_{N-1}^2, which is the
    energy gradient of the final half-cell (a hard theta_N = theta_{N-1} clamp
    would not be, and would let the truncation boundary feed energy back in)."""
    lower, diag, upper = stencils
    out = np.zeros_like(theta)
    out[1:-1] = lower * theta[:-2] + diag * theta[1:-1] + upper * theta[2:]
    out[-1] = 2.0 * (theta[-2] - theta[-1]) / (h_last * h_last)
    return out


def el_residual(p: Profile, params: ModelParams) -> Field:
    """Steady-state defect theta'' - sin(theta)cos(theta) - stray-field term,
    on interior nodes (endpoints are boundary-condition rows and report 0).

    The stray-field term splits the half-Laplacian of u = sin(theta - beta)
    into the exact left-tail charge u/x (u vanishes for x <= 0) plus the
    half-line quadratic-form gradient, divided by pi.
    """
    if abs(params.beta - p.beta) > 1e-12 * max(1.0, abs(p.beta)):
        raise DomainError(
            f"model beta {params.beta!r} does not match profile beta {p.beta!r}"
        )
    grid = p.grid
    theta = p.theta
    u = np.sin(theta - p.beta)
    form = get_nonlocal_form(grid)
    edge = np.zeros_like(u)
    edge[1:] = u[1:] / grid.nodes[1:]
    stray = params.nu / (2.0 * math.pi) * np.cos(theta - p.beta) * (edge + form.G(u))
    h_last = float(grid.spacings[-1])
    values = _apply_laplacian(theta, _laplacian_stencils(grid), h_last)
    values -= np.sin(theta) * np.cos(theta)
    values -= stray
    values[0] = 0.0
    values[-1] = 0.0
    return Field(grid, values)


def _implicit_banded(grid: Grid, dt: float) -> np.ndarray:
    """Banded form of (I - dt * Laplacian) with a Dirichlet first row and the
    natural zero-flux last row, laid out for scipy.linalg.solve_banded."""
    n = len(grid) - 1
    lower, diag, upper = _laplacian_stencils(grid)
    h_last = float(grid.spacings[-1])
    ab = np.zeros((3, n + 1))
    ab[0, 2:] = -dt * upper  # superdiagonal, shifted right
    ab[1, 1:-1] = 1.0 - dt * diag
    ab[2, :-2] = -dt * lower  # subdiagonal, shifted left
    ab[1, 0] = 1.0  # theta_0 = beta
    ab[1, n] = 1.0 + dt * 2.0 / (h_last * h_last)
    ab[2, n - 1] = -dt * 2.0 / (h_last * h_last)
    return ab


def relax(
    params: ModelParams,
    grid: Grid,
    initial: Profile,
    cfg: RelaxationConfig | None = None,
    verbose: bool = False,
) -> RelaxationResult:
    """March the semi-implicit flow until the residual sup-norm drops below tol.

    Stops on the Euler-Lagrange residual, not the update size, so a small dt
    cannot fake convergence.  Raises DivergenceError on non-finite values and
    StabilityError when the sampled energy rises persistently (dt too large).
    """
    if cfg is None:
        cfg = RelaxationConfig()
    if abs(initial.beta - params.beta) > 1e-12 * max(1.0, abs(params.beta)):
        raise DomainError(
            f"initial profile beta {initial.beta!r} does not match model {params.beta!r}"
        )
    if initial.grid is not grid and not np.array_equal(initial.grid.nodes, grid.nodes):
        raise DomainError("initial profile lives on a different grid")

    h_min = float(np.min(grid.spacings))
    dt = cfg.dt if cfg.dt is not None else min(0.05, h_min / (1.0 + params.nu))

    x = grid.nodes
    stencils = _laplacian_stencils(grid)
    h_last = float(grid.spacings[-1])
    ab = _implicit_banded(grid, dt)
    form = get_nonlocal_form(grid)
    beta, nu = params.beta, params.nu

    theta = initial.theta.copy()
    theta[0] = beta
    energy_history: list = []
    last_energy = None
    rise_count = 0
    steps = 0
    residual_sup = math.inf

    def explicit_part(th: np.ndarray) -> np.ndarray:
        u = np.sin(th - beta)
        edge = np.zeros_like(u)
        edge[1:] = u[1:] / x[1:]
        stray = nu / (2.0 * math.pi) * np.cos(th - beta) * (edge + form.G(u))
        return -np.sin(th) * np.cos(th) - stray

    for step in range(cfg.max_steps + 1):
        nonlinear = explicit_part(theta)
        residual = _apply_laplacian(theta, stencils, h_last) + nonlinear
        residual_sup = float(np.max(np.abs(residual[1:-1]))) if len(theta) > 2 else 0.0

        sample_now = step % cfg.report_every == 0
        if sample_now or residual_sup <= cfg.tol or step == cfg.max_steps:
            prof = Profile(grid=grid, theta=theta.copy(), beta=beta)
            energy = renormalized_energy(prof, params).total_renormalized
            energy_history.append((step, energy))
            if verbose:
                print(f"step {step:8d}  residual {residual_sup:.3e}  energy {energy:.10f}")
            if last_energy is not None and energy > last_energy + 1e-8 * max(1.0, abs(last_energy)):
                rise_count += 1
                if rise_count >= _RISE_LIMIT:
                    raise StabilityError(step, dt)
            else:
                rise_count = 0
            last_energy = energy

        if residual_sup <= cfg.tol or step == cfg.max_steps:
            steps = step
            break

        rhs = theta + dt * nonlinear
        rhs[0] = beta
        theta = solve_banded((1, 1), ab, rhs)
        # The solver's partial pivoting can smear round-off into the pinned
        # edge value; the constraint row is exact, so restore it exactly.
        theta[0] = beta
        if not np.all(np.isfinite(theta)):
            raise DivergenceError(step + 1)

    final = Profile(grid=grid, theta=theta, beta=beta)
    return RelaxationResult(
        profile=final,
        steps_taken=steps,
        final_residual=residual_sup,
        energy_history=energy_history,
        converged=residual_sup <= cfg.tol,
    )

"""Local, nonlocal, and renormalized wall energies.

The renormalized energy of an angle profile theta on the half-line is

    E = int_0^inf ( theta'^2/2 + sin^2(theta)/2
                    + (nu/4 pi) (sin^2(theta - beta) - sin^2(eta - beta)) / x ) dx
        + (nu/8 pi) (J(sin(theta - beta)) - J(sin(eta - beta)))

where eta is a fixed comparison cutoff (beta at the edge, 0 past x = 1) and
J(u) is the double integral of (u(x) - u(y))^2 / (x - y)^2 over the quarter
plane, with u continued by its last sample past the grid end.  Subtracting the
cutoff's own contributions cancels the logarithmic edge divergence, so every
piece here is finite.

The discrete J is the quadratic form u^T Q u built from the same closed-form
principal-value assembly the dynamics module applies pointwise.  That choice is
deliberate: the Euler-Lagrange residual of the flow is then *exactly* the
(negative, weight-scaled) gradient of the discrete energy, so energy descent
and the gradient check hold to round-off rather than to quadrature accuracy.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .grid import Grid
from .operators import Field, get_assembly
from .params import ModelParams


@dataclass(frozen=True)
class Profile:
    """Angle samples on a grid with the clamped edge value beta."""

    grid: Grid
    theta: np.ndarray
    beta: float

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        if theta.shape != self.grid.nodes.shape:
            raise DomainError(
                f"profile has {theta.shape} samples for {self.grid.nodes.shape} nodes"
            )
        if not np.all(np.isfinite(theta)):
            raise DomainError("profile contains non-finite angles")
        if not math.isfinite(self.beta):
            raise DomainError(f"beta must be finite, got {self.beta!r}")
        if abs(theta[0] - self.beta) > 1e-12 * max(1.0, abs(self.beta)):
            raise DomainError(
                f"theta[0]={theta[0]!r} must equal the edge value beta={self.beta!r}"
            )
        object.__setattr__(self, "theta", theta)


@dataclass(frozen=True)
class Cutoff:
    """Comparison profile: beta at the edge, 0 past x = width, C^2 in between.

    The shape is the quintic smoothstep, which is monotone with vanishing first
    and second derivatives at both plateau ends.  `width` must stay in (0, 1]
    so the plateau condition "zero past x = 1" always holds; values below 1
    give an alternative admissible cutoff for independence checks.
    """

    beta: float
    width: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise DomainError(f"cutoff beta must be finite, got {self.beta!r}")
        if not (0.0 < self.width <= 1.0):
            raise DomainError(f"cutoff width must lie in (0, 1], got {self.width!r}")

    def eval(self, x):
        t = np.clip(np.asarray(x, dtype=float) / self.width, 0.0, 1.0)
        t3 = t * t * t
        return self.beta * (1.0 - 10.0 * t3 + 15.0 * t3 * t - 6.0 * t3 * t * t)

    def sample(self, grid: Grid) -> np.ndarray:
        return self.eval(grid.nodes)


def cutoff_eval(beta: float, x):
    """Default comparison cutoff value at x: beta for x <= 0, 0 for x >= 1."""
    return Cutoff(beta).eval(x)


@dataclass(frozen=True)
class EnergyBreakdown:
    """Named pieces of the renormalized energy; total combines them with the
    nu-weighted difference of the two double integrals."""

    exchange: float
    anisotropy: float
    edge_charge_term: float
    gagliardo_J_theta: float
    gagliardo_J_eta: float
    total_renormalized: float

    def to_dict(self) -> dict:
        return {
            "exchange": self.exchange,
            "anisotropy": self.anisotropy,
            "edge_charge_term": self.edge_charge_term,
            "gagliardo_J_theta": self.gagliardo_J_theta,
            "gagliardo_J_eta": self.gagliardo_J_eta,
            "total_renormalized": self.total_renormalized,
        }


class NonlocalForm:
    """Quadratic form for the quarter-plane double integral on one grid.

    Q = W A + A^T W + e_N r^T + r e_N^T, where A is the closed-form half-line
    operator matrix (constant right tail), W the trapezoid weights, and r the
    outer-tail row accounting for x beyond the grid end where the field sits at
    its last sample.  J(u) = u^T Q u; the pointwise gradient field is
    G(u) = (Q u) / (2 w), which the dynamics module uses as its stray-field term
    so that flow and energy share one discretization.
    """

    def __init__(self, grid: Grid):
        assembly = get_assembly(grid)
        a0 = assembly.halfline_matrix()
        w = grid.weights
        r = assembly.outer_tail_row()
        q = w[:, None] * a0
        q = q + q.T
        q[-1, :] += r
        q[:, -1] += r
        self.grid = grid
        self.weights = w
        self.matrix = q

    def J(self, u: np.ndarray) -> float:
        u = np.asarray(u, dtype=float)
        return float(u @ (self.matrix @ u))

    def G(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return (self.matrix @ u) / (2.0 * self.weights)


_FORM_CACHE: "weakref.WeakKeyDictionary[Grid, NonlocalForm]" = weakref.WeakKeyDictionary()


def get_nonlocal_form(grid: Grid) -> NonlocalForm:
    try:
        return _FORM_CACHE[grid]
    except KeyError:
        form = NonlocalForm(grid)
        _FORM_CACHE[grid] = form
        return form


def local_energy(p: Profile) -> float:
    """Exchange plus anisotropy energy of the piecewise-linear profile.

    The slope is cell-wise constant, so the theta'^2 part integrates exactly;
    sin^2(theta) uses the trapezoid rule on the nodes.
    """
    h = p.grid.spacings
    slopes = np.diff(p.theta) / h
    exchange = 0.5 * float(np.sum(slopes * slopes * h))
    anisotropy = 0.5 * float(np.sum(p.grid.weights * np.sin(p.theta) ** 2))
    return exchange + anisotropy


def gagliardo_J(p: Profile) -> float:
    """Quarter-plane double integral of (u(x)-u(y))^2/(x-y)^2 for u = sin(theta-beta),
    with u continued past the grid end by its last sample."""
    u = np.sin(p.theta - p.beta)
    return get_nonlocal_form(p.grid).J(u)


def energy_lower_bound(beta: float) -> float:
    """Sharp lower bound 1 - cos(beta) for the local energy of admissible profiles."""
    return 1.0 - math.cos(beta)


def edge_integrand_bound_constant(beta: float, nu: float) -> float:
    """Constant C in the pointwise bound

        sin^2(theta)/2 + (nu/4 pi)(sin^2(theta-beta) - sin^2(eta-beta))/x >= -C/(1+x^2).

    Implementation-derived, not sharp.  For x >= 1 the cutoff term is
    -(nu/4 pi) sin^2(beta)/x and sin^2(theta-beta)-sin^2(beta) = sin(theta)sin(theta-2beta),
    so minimizing over |sin(theta)| gives a floor of -nu^2/(32 pi^2 x^2), covered by
    C >= nu^2/(8 pi).  For x < 1 the quintic cutoff has |eta'| <= 15|beta|/8, hence
    sin^2(eta-beta) <= (15 beta/8)^2 x^2 and the negative part is at most
    (nu/4 pi)(225 beta^2/64) x, covered by C >= 225 nu beta^2 / (128 pi).
    """
    if nu < 0.0:
        raise DomainError(f"nu must be >= 0, got {nu!r}")
    return max(nu * nu / (8.0 * math.pi), 225.0 * nu * beta * beta / (128.0 * math.pi))


def renormalized_energy(
    p: Profile, model: ModelParams, cutoff: Cutoff | None = None
) -> EnergyBreakdown:
    """All pieces of the renormalized energy of a profile.

    The 1/x edge integrand is assigned the value 0 at the first node: both
    squared sines vanish quadratically there because theta and the cutoff equal
    beta at the edge, so the integrand extends continuously by 0.
    """
    if cutoff is None:
        cutoff = Cutoff(p.beta)
    if abs(cutoff.beta - p.beta) > 1e-12 * max(1.0, abs(p.beta)):
        raise DomainError(
            f"cutoff edge value {cutoff.beta!r} does not match profile beta {p.beta!r}"
        )
    if abs(model.beta - p.beta) > 1e-12 * max(1.0, abs(p.beta)):
        raise DomainError(
            f"model beta {model.beta!r} does not match profile beta {p.beta!r}"
        )
    grid = p.grid
    x = grid.nodes
    w = grid.weights
    h = grid.spacings

    slopes = np.diff(p.theta) / h
    exchange = 0.5 * float(np.sum(slopes * slopes * h))
    anisotropy = 0.5 * float(np.sum(w * np.sin(p.theta) ** 2))

    u = np.sin(p.theta - p.beta)
    eta = cutoff.sample(grid)
    u_eta = np.sin(eta - p.beta)

    integrand = np.zeros_like(x)
    integrand[1:] = (u[1:] ** 2 - u_eta[1:] ** 2) / x[1:]
    edge_charge = model.nu / (4.0 * math.pi) * float(np.sum(w * integrand))

    form = get_nonlocal_form(grid)
    j_theta = form.J(u)
    j_eta = form.J(u_eta)

    total = (
        exchange
        + anisotropy
        + edge_charge
        + model.nu / (8.0 * math.pi) * (j_theta - j_eta)
    )
    return EnergyBreakdown(
        exchange=exchange,
        anisotropy=anisotropy,
        edge_charge_term=edge_charge,
        gagliardo_J_theta=j_theta,
        gagliardo_J_eta=j_eta,
        total_renormalized=total,
    )


class ThreeWays(NamedTuple):
    log_kernel: float
    spectral: float
    gagliardo: float


def _log_moment(s: np.ndarray) -> np.ndarray:
    """Second antiderivative of ln|s| (choice with value 0 at 0): s^2(2 ln|s| - 3)/4."""
    out = np.zeros_like(s)
    nz = s != 0.0
    out[nz] = s[nz] * s[nz] * (2.0 * np.log(np.abs(s[nz])) - 3.0) / 4.0
    return out


def nonlocal_three_ways(m: Field, pad_factor: int = 32) -> ThreeWays:
    """Three discretizations of the same nonlocal energy of a compactly
    supported function m on a uniform grid, all normalized to the whole-line
    double integral of (m(x) - m(y))^2 / (x - y)^2:

    log_kernel : -2 * double integral of ln|x - y| m'(x) m'(y), evaluated in
                 closed form for the cell-wise constant slopes;
    spectral   : integral of |k| |m_hat(k)|^2 dk via a zero-padded FFT;
    gagliardo  : 2 sum_i w_i m_i (P m)_i with the closed-form principal-value
                 operator P and zero extension on both sides.
    """
    grid = m.grid
    h = grid.spacings
    h0 = float(h[0])
    if np.max(np.abs(h - h0)) > 1e-9 * h0:
        raise DomainError("three-way comparison requires a uniform grid")
    values = m.values
    scale = max(1.0, float(np.max(np.abs(values))))
    if abs(values[0]) > 1e-12 * scale or abs(values[-1]) > 1e-12 * scale:
        raise DomainError(
            "three-way comparison requires zero samples at both grid ends "
            "(the log-kernel form integrates by parts twice)"
        )

    # Log-kernel: slopes are constant per cell, so the double integral reduces
    # to pairwise cell-moment differences of the antiderivative.
    a = grid.nodes[:-1]
    b = grid.nodes[1:]
    slopes = np.diff(values) / h
    moments = (
        _log_moment(b[:, None] - a[None, :])
        + _log_moment(a[:, None] - b[None, :])
        - _log_moment(b[:, None] - b[None, :])
        - _log_moment(a[:, None] - a[None, :])
    )
    log_kernel = -2.0 * float(slopes @ (moments @ slopes))

    # Spectral: zero-pad so the |k| multiplier is resolved near k = 0, where
    # the integrand has a kink.
    n_pad = pad_factor * values.size
    padded = np.zeros(n_pad)
    padded[: values.size] = values
    k = 2.0 * math.pi * np.fft.fftfreq(n_pad, d=h0)
    m_hat = h0 * np.fft.fft(padded)
    dk = 2.0 * math.pi / (n_pad * h0)
    spectral = float(np.sum(np.abs(k) * np.abs(m_hat) ** 2) * dk)

    # Gagliardo: symmetrized against the pointwise operator; the zero samples
    # at the ends make the singular endpoint rows irrelevant.
    assembly = get_assembly(grid)
    pv = assembly.core @ values
    pv += assembly.left_tail() * values
    pv += assembly.right_tail() * values
    gagliardo = 2.0 * float(np.sum(grid.weights * values * pv))

    return ThreeWays(log_kernel=log_kernel, spectral=spectral, gagliardo=gagliardo)

"""Profile post-processing: tail decay fits, winding/overshoot diagnostics, edge slope."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .energy import Profile
from .errors import DomainError, WindowError

#: minimum number of nodes a fit window must contain
_MIN_WINDOW_NODES = 8


@dataclass(frozen=True)
class DecayFit:
    """One fitted tail model.  For model="power", exponent_or_rate is the
    exponent p in A x^p; for model="exponential" it is the coefficient c in
    A exp(c x).  Decaying tails give negative values in both cases."""

    model: str
    exponent_or_rate: float
    prefactor: float
    window: tuple
    r_squared: float

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "exponent_or_rate": self.exponent_or_rate,
            "prefactor": self.prefactor,
            "window": list(self.window),
            "r_squared": self.r_squared,
        }


@dataclass(frozen=True)
class DecayFitResult:
    power: DecayFit
    exponential: DecayFit
    best: DecayFit

    def to_dict(self) -> dict:
        return {
            "power": self.power.to_dict(),
            "exponential": self.exponential.to_dict(),
            "best": self.best.model,
        }


def _linear_fit(t: np.ndarray, y: np.ndarray):
    """Least squares y ~ a + b t; returns (a, b, r_squared)."""
    t_mean = t.mean()
    y_mean = y.mean()
    tt = t - t_mean
    slope = float(tt @ (y - y_mean) / (tt @ tt))
    intercept = float(y_mean - slope * t_mean)
    res = y - (intercept + slope * t)
    ss_tot = float(((y - y_mean) ** 2).sum())
    ss_res = float((res**2).sum())
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return intercept, slope, r2


def fit_decay(p: Profile, window: tuple) -> DecayFitResult:
    """Fit the tail of |theta| on [x_lo, x_hi] by both a power law and an
    exponential, in log coordinates; `best` is the higher-r-squared model.

    The window must contain at least 8 nodes, lie inside the grid at positive
    x, and theta must keep one sign on it (a sign change means the tail is
    oscillating and neither model applies).
    """
    x_lo, x_hi = float(window[0]), float(window[1])
    if not x_lo < x_hi:
        raise WindowError(f"window must satisfy x_lo < x_hi, got {window!r}")
    if x_lo <= 0.0:
        raise WindowError(f"window must start at positive x, got {window!r}")
    x = p.grid.nodes
    if x_hi > p.grid.x_max:
        raise WindowError(
            f"window end {x_hi!r} lies beyond the grid end {p.grid.x_max!r}"
        )
    mask = (x >= x_lo) & (x <= x_hi)
    if int(mask.sum()) < _MIN_WINDOW_NODES:
        raise WindowError(
            f"window {window!r} contains {int(mask.sum())} nodes, needs >= {_MIN_WINDOW_NODES}"
        )
    theta = p.theta[mask]
    xs = x[mask]
    if np.any(theta == 0.0) or (theta.max() > 0.0 and theta.min() < 0.0):
        raise WindowError("theta changes sign (or vanishes) inside the fit window")

    log_theta = np.log(np.abs(theta))
    a_pow, b_pow, r2_pow = _linear_fit(np.log(xs), log_theta)
    a_exp, b_exp, r2_exp = _linear_fit(xs, log_theta)

    power = DecayFit(
        model="power",
        exponent_or_rate=b_pow,
        prefactor=math.exp(a_pow),
        window=(x_lo, x_hi),
        r_squared=r2_pow,
    )
    exponential = DecayFit(
        model="exponential",
        exponent_or_rate=b_exp,
        prefactor=math.exp(a_exp),
        window=(x_lo, x_hi),
        r_squared=r2_exp,
    )
    best = power if r2_pow >= r2_exp else exponential
    return DecayFitResult(power=power, exponential=exponential, best=best)


@dataclass(frozen=True)
class ProfileDiagnostics:
    theta_infinity: float
    winding_flag: bool
    monotone_flag: bool
    overshoot_flag: bool
    boundary_slope: float

    def to_dict(self) -> dict:
        return {
            "theta_infinity": self.theta_infinity,
            "winding_flag": self.winding_flag,
            "monotone_flag": self.monotone_flag,
            "overshoot_flag": self.overshoot_flag,
            "boundary_slope": self.boundary_slope,
        }


def boundary_slope(p: Profile) -> float:
    """One-sided second-order slope at the edge from the first three nodes."""
    x = p.grid.nodes
    t = p.theta
    if len(x) < 3:
        return float((t[1] - t[0]) / (x[1] - x[0]))
    h1 = x[1] - x[0]
    h2 = x[2] - x[1]
    c0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2))
    c1 = (h1 + h2) / (h1 * h2)
    c2 = -h1 / (h2 * (h1 + h2))
    return float(c0 * t[0] + c1 * t[1] + c2 * t[2])


def diagnostics(p: Profile, overshoot_threshold: float = 1e-6) -> ProfileDiagnostics:
    """Classify a (typically relaxed) profile.

    theta_infinity : multiple of pi nearest the mean of theta over the last
                     decade of the domain (x >= x_max/10), which is robust to
                     slowly decaying tails.
    winding_flag   : the profile left the direct edge-to-tail transition:
                     max|theta| exceeds max(|beta|, pi/2) + 0.1, or theta exits
                     the interval between 0 and beta by more than 0.1, or the
                     range of theta strictly straddles a nonzero multiple of pi
                     (the profile passes through an intermediate reversed
                     state, as a 3 pi/2 wall unwinding to 0 does).
    monotone_flag  : successive differences never change sign; differences
                     below 1e-3 of the profile's sup norm are treated as flat.
    overshoot_flag : theta - theta_infinity takes both signs (beyond the
                     threshold), i.e. the tail crosses its limit and comes back.
    boundary_slope : one-sided second-order stencil at x = 0.

    The final two cells are excluded from the shape flags: a relaxed profile
    carries an O(1e-2) boundary layer there where the constant-tail stray-field
    extension meets the free end of the truncated domain, and that layer says
    nothing about the wall itself.
    """
    x = p.grid.nodes
    theta = p.theta
    beta = p.beta

    tail = theta[x >= p.grid.x_max / 10.0]
    if tail.size == 0:
        raise DomainError("grid has no nodes in the last decade; cannot classify tail")
    theta_inf = math.pi * round(float(tail.mean()) / math.pi)

    core = theta[:-2] if len(theta) > 4 else theta

    lo = min(0.0, beta) - 0.1
    hi = max(0.0, beta) + 0.1
    outside_band = bool(np.any(core < lo) or np.any(core > hi))
    too_large = bool(np.max(np.abs(core)) > max(abs(beta), math.pi / 2.0) + 0.1)
    t_min, t_max = float(core.min()), float(core.max())
    crosses_pi = any(
        t_min < k * math.pi < t_max
        for k in range(math.ceil(t_min / math.pi), math.floor(t_max / math.pi) + 1)
        if k != 0
    )
    winding = outside_band or too_large or crosses_pi

    diffs = np.diff(core)
    scale = max(1e-12, float(np.max(np.abs(core))))
    moving = diffs[np.abs(diffs) > 1e-3 * scale]
    monotone = bool(moving.size == 0 or np.all(moving > 0) or np.all(moving < 0))

    dev = core - theta_inf
    overshoot = bool(
        np.any(dev > overshoot_threshold) and np.any(dev < -overshoot_threshold)
    )

    return ProfileDiagnostics(
        theta_infinity=theta_inf,
        winding_flag=winding,
        monotone_flag=monotone,
        overshoot_flag=overshoot,
        boundary_slope=boundary_slope(p),
    )

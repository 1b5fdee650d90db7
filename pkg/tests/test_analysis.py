import math

import numpy as np
import pytest

from edgewall import (
    Grid,
    ModelParams,
    Profile,
    WindowError,
    analytic_zero_nu_profile,
    boundary_slope,
    diagnostics,
    fit_decay,
    initial_profile,
    make_stretched_grid,
    make_uniform_grid,
    relax,
)


def synthetic_profile(values_past_zero, grid, beta=1.0):
    theta = np.empty(len(grid))
    theta[0] = beta
    theta[1:] = values_past_zero
    return Profile(grid=grid, theta=theta, beta=beta)


class TestFitDecay:
    def test_recovers_exact_power_law(self):
        grid = make_uniform_grid(1.0, 1000.0)
        x = grid.nodes
        p = synthetic_profile(3.0 / x[1:], grid, beta=5.0)
        fits = fit_decay(p, (50.0, 500.0))
        assert fits.power.exponent_or_rate == pytest.approx(-1.0, abs=1e-12)
        assert fits.power.prefactor == pytest.approx(3.0, rel=1e-12)
        assert fits.power.r_squared == pytest.approx(1.0, abs=1e-12)
        assert fits.best.model == "power"

    def test_recovers_exact_exponential(self):
        grid = make_uniform_grid(0.25, 40.0)
        x = grid.nodes
        p = synthetic_profile(5.0 * np.exp(-0.7 * x[1:]), grid, beta=5.0)
        fits = fit_decay(p, (2.0, 20.0))
        assert fits.exponential.exponent_or_rate == pytest.approx(-0.7, abs=1e-10)
        assert fits.exponential.prefactor == pytest.approx(5.0, rel=1e-6)
        assert fits.best.model == "exponential"
        assert fits.exponential.r_squared > fits.power.r_squared

    def test_negative_tail_is_fitted_by_magnitude(self):
        grid = make_uniform_grid(1.0, 1000.0)
        x = grid.nodes
        p = synthetic_profile(-2.0 / x[1:], grid, beta=-5.0)
        fits = fit_decay(p, (50.0, 500.0))
        assert fits.power.exponent_or_rate == pytest.approx(-1.0, abs=1e-12)
        assert fits.power.prefactor == pytest.approx(2.0, rel=1e-12)

    def test_sign_change_rejected(self):
        grid = make_uniform_grid(0.5, 100.0)
        x = grid.nodes
        p = synthetic_profile(np.cos(x[1:]) / (1.0 + x[1:]), grid)
        with pytest.raises(WindowError):
            fit_decay(p, (20.0, 80.0))

    @pytest.mark.parametrize("window", [
        (50.0, 50.0),       # empty
        (500.0, 50.0),      # reversed
        (0.0, 50.0),        # starts at the edge
        (50.0, 2000.0),     # past the grid end
        (50.0, 52.0),       # too few nodes at dx=1
    ])
    def test_bad_windows_rejected(self, window):
        grid = make_uniform_grid(1.0, 1000.0)
        p = synthetic_profile(1.0 / grid.nodes[1:], grid)
        with pytest.raises(WindowError):
            fit_decay(p, window)

    def test_to_dict_names_best_model(self):
        grid = make_uniform_grid(1.0, 1000.0)
        p = synthetic_profile(3.0 / grid.nodes[1:], grid, beta=5.0)
        d = fit_decay(p, (50.0, 500.0)).to_dict()
        assert d["best"] == "power"
        assert set(d["power"]) == {"model", "exponent_or_rate", "prefactor", "window", "r_squared"}


class TestBoundarySlope:
    def test_exact_on_quadratics(self):
        # The one-sided stencil has second order, so quadratics are exact even
        # on uneven spacings.
        grid = Grid([0.0, 0.3, 0.7, 1.5, 2.0])
        x = grid.nodes
        theta = 2.0 - 1.3 * x + 0.4 * x * x
        p = Profile(grid=grid, theta=theta, beta=2.0)
        assert boundary_slope(p) == pytest.approx(-1.3, rel=1e-12)

    def test_antisymmetry(self):
        grid = make_uniform_grid(0.05, 10.0)
        p = analytic_zero_nu_profile(1.0, grid)
        q = Profile(grid=grid, theta=-p.theta, beta=-1.0)
        assert boundary_slope(q) == -boundary_slope(p)


class TestDiagnostics:
    def test_plain_wall(self):
        grid = make_uniform_grid(0.05, 40.0)
        d = diagnostics(analytic_zero_nu_profile(math.pi / 4, grid))
        assert d.theta_infinity == 0.0
        assert not d.winding_flag
        assert d.monotone_flag
        assert not d.overshoot_flag
        assert d.boundary_slope < 0.0

    def test_limit_at_multiple_of_pi(self):
        grid = make_uniform_grid(0.1, 50.0)
        x = grid.nodes
        theta = 2.0 * math.pi + (0.5 - 2.0 * math.pi) * np.exp(-x)
        theta[0] = 0.5
        d = diagnostics(Profile(grid=grid, theta=theta, beta=0.5))
        assert d.theta_infinity == 2.0 * math.pi
        assert d.winding_flag  # the range straddles pi

    def test_band_excursion_flags_winding(self):
        grid = make_uniform_grid(0.1, 50.0)
        x = grid.nodes
        theta = 0.5 * np.exp(-x) - 0.8 * x * np.exp(-x)
        theta[0] = 0.5
        d = diagnostics(Profile(grid=grid, theta=theta, beta=0.5))
        assert d.winding_flag  # dips below -0.1
        assert not d.monotone_flag

    def test_overshoot_detection(self):
        grid = make_uniform_grid(0.1, 60.0)
        x = grid.nodes
        theta = 0.3 * np.exp(-x) * np.cos(2.0 * x)
        theta[0] = 0.3
        d = diagnostics(Profile(grid=grid, theta=theta, beta=0.3))
        assert d.overshoot_flag
        assert not d.monotone_flag

    def test_relaxed_wall_with_stray_field_is_clean(self):
        grid = make_stretched_grid(0.1, 20.0, 200.0)
        result = relax(
            ModelParams(beta=math.pi / 4, nu=2.0),
            grid,
            initial_profile(math.pi / 4, grid),
        )
        d = diagnostics(result.profile)
        assert d.theta_infinity == 0.0
        assert not d.winding_flag
        assert d.monotone_flag
        assert not d.overshoot_flag

    def test_to_dict_round_trip_types(self):
        grid = make_uniform_grid(0.05, 40.0)
        d = diagnostics(analytic_zero_nu_profile(1.0, grid)).to_dict()
        assert isinstance(d["winding_flag"], bool)
        assert isinstance(d["theta_infinity"], float)
        assert isinstance(d["boundary_slope"], float)

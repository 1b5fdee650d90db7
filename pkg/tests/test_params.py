import math

import pytest

from edgewall import (
    DomainError,
    MaterialParams,
    ModelParams,
    derive_scales,
    load_config,
    parse_angle,
)

PERMALLOY = MaterialParams(
    saturation_magnetization=8.0e5,
    exchange_constant=1.3e-11,
    anisotropy_constant=5.0e2,
    thickness=4.0e-9,
)


class TestDeriveScales:
    def test_permalloy_reference_values(self):
        s = derive_scales(PERMALLOY)
        assert s.exchange_length * 1e9 == pytest.approx(5.69, abs=0.01)
        assert s.bloch_width * 1e9 == pytest.approx(161.0, abs=1.0)
        assert s.nu == pytest.approx(20.0, abs=0.1)

    def test_nu_linear_in_thickness(self):
        thin = derive_scales(PERMALLOY)
        thick = derive_scales(
            MaterialParams(
                saturation_magnetization=PERMALLOY.saturation_magnetization,
                exchange_constant=PERMALLOY.exchange_constant,
                anisotropy_constant=PERMALLOY.anisotropy_constant,
                thickness=2.0 * PERMALLOY.thickness,
            )
        )
        assert thick.nu == pytest.approx(2.0 * thin.nu, rel=1e-12)

    def test_lengths_independent_of_thickness(self):
        a = derive_scales(PERMALLOY)
        b = derive_scales(
            MaterialParams(
                saturation_magnetization=PERMALLOY.saturation_magnetization,
                exchange_constant=PERMALLOY.exchange_constant,
                anisotropy_constant=PERMALLOY.anisotropy_constant,
                thickness=5.0 * PERMALLOY.thickness,
            )
        )
        assert b.exchange_length == a.exchange_length
        assert b.bloch_width == a.bloch_width

    def test_delta_is_thickness_ratio(self):
        s = derive_scales(PERMALLOY)
        assert s.delta == pytest.approx(PERMALLOY.thickness / s.bloch_width, rel=1e-12)

    @pytest.mark.parametrize("field", [
        "saturation_magnetization", "exchange_constant", "anisotropy_constant", "thickness",
    ])
    def test_rejects_nonpositive(self, field):
        kwargs = {
            "saturation_magnetization": 8.0e5,
            "exchange_constant": 1.3e-11,
            "anisotropy_constant": 5.0e2,
            "thickness": 4.0e-9,
        }
        kwargs[field] = 0.0
        with pytest.raises(DomainError):
            MaterialParams(**kwargs)


class TestParseAngle:
    @pytest.mark.parametrize("text,expected", [
        ("0.785", 0.785),
        ("-1.5", -1.5),
        ("pi", math.pi),
        ("-pi", -math.pi),
        ("pi/4", math.pi / 4),
        ("3*pi/2", 3 * math.pi / 2),
        ("-3*pi/4", -3 * math.pi / 4),
        (" pi / 8 ", math.pi / 8),
        ("+pi/2", math.pi / 2),
        ("0.5*pi", math.pi / 2),
    ])
    def test_accepted_forms(self, text, expected):
        assert parse_angle(text) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("text", ["", "tau", "pi/0", "2**pi", "pie/4", "pi/four"])
    def test_rejects_junk(self, text):
        with pytest.raises(DomainError):
            parse_angle(text)


class TestModelParams:
    def test_negative_nu_rejected(self):
        with pytest.raises(DomainError):
            ModelParams(beta=0.5, nu=-1.0)

    def test_nonfinite_beta_rejected(self):
        with pytest.raises(DomainError):
            ModelParams(beta=math.nan, nu=1.0)


class TestLoadConfig:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(
            "# relaxation run\n"
            "beta = pi/4\n"
            "nu = 2.5\n"
            "\n"
            "dx0 = 0.125\n"
            "max_steps = 1000\n"
            "out_prefix = wall\n"
        )
        cfg = load_config(str(path))
        assert cfg["beta"] == pytest.approx(math.pi / 4)
        assert cfg["nu"] == 2.5
        assert cfg["max_steps"] == 1000
        assert isinstance(cfg["max_steps"], int)
        assert cfg["out_prefix"] == "wall"

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("betta = 0.5\n")
        with pytest.raises(DomainError, match="betta"):
            load_config(str(path))

    def test_missing_equals(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("beta\n")
        with pytest.raises(DomainError):
            load_config(str(path))

"""Material constants, dimensionless model parameters, and the conversion between them.

All magnetic quantities are SI.  The dimensionless model keeps only the edge
angle beta and the stray-field strength nu; lengths are measured in units of
the Bloch wall width sqrt(A/K).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Vacuum permeability, exact SI definition used throughout.
MU0 = 4.0e-7 * math.pi

#: keys recognized in a flat key=value run-configuration file
CONFIG_KEYS = (
    "beta",
    "nu",
    "dx0",
    "stretch_b",
    "x_max",
    "dt",
    "tol",
    "max_steps",
    "out_prefix",
)


@dataclass(frozen=True)
class MaterialParams:
    """Film material constants.

    Attributes
    ----------
    saturation_magnetization : A/m
    exchange_constant : exchange stiffness, J/m
    anisotropy_constant : in-plane uniaxial anisotropy, J/m^3
    thickness : film thickness, m
    """

    saturation_magnetization: float
    exchange_constant: float
    anisotropy_constant: float
    thickness: float

    def __post_init__(self):
        for name in (
            "saturation_magnetization",
            "exchange_constant",
            "anisotropy_constant",
            "thickness",
        ):
            value = getattr(self, name)
            if not (value > 0.0) or not math.isfinite(value):
                raise DomainError(f"material constant {name} must be positive, got {value!r}")


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless model parameters: edge angle beta and stray-field strength nu."""

    beta: float
    nu: float

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise DomainError(f"beta must be finite, got {self.beta!r}")
        if not math.isfinite(self.nu) or self.nu < 0.0:
            raise DomainError(f"nu must be finite and >= 0, got {self.nu!r}")


@dataclass(frozen=True)
class DimensionlessScales:
    """Derived length scales and dimensionless groups for a given material.

    Attributes
    ----------
    exchange_length : sqrt(2 A / (mu0 Ms^2)), m
    bloch_width : sqrt(A / K), m
    nu : mu0 Ms^2 d / (2 sqrt(A K)), strength of the nonlocal stray-field term
    delta : thickness / bloch_width, dimensionless
    """

    exchange_length: float
    bloch_width: float
    nu: float
    delta: float


def derive_scales(material: MaterialParams) -> DimensionlessScales:
    """Compute the Bloch width, exchange length, and the dimensionless groups nu, delta."""
    ms = material.saturation_magnetization
    a_ex = material.exchange_constant
    k_u = material.anisotropy_constant
    d = material.thickness
    exchange_length = math.sqrt(2.0 * a_ex / (MU0 * ms * ms))
    bloch_width = math.sqrt(a_ex / k_u)
    nu = MU0 * ms * ms * d / (2.0 * math.sqrt(a_ex * k_u))
    delta = d / bloch_width
    return DimensionlessScales(
        exchange_length=exchange_length,
        bloch_width=bloch_width,
        nu=nu,
        delta=delta,
    )


def parse_angle(text: str) -> float:
    """Parse an angle given as a decimal or as a rational multiple of pi.

    Accepted forms: "0.785", "pi", "-pi", "pi/4", "3*pi/2", "-3*pi/4".
    Whitespace around tokens is ignored.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise DomainError("empty angle")
    try:
        return float(s)
    except ValueError:
        pass

    sign = 1.0
    if s.startswith("-"):
        sign = -1.0
        s = s[1:]
    elif s.startswith("+"):
        s = s[1:]

    numerator = 1.0
    denominator = 1.0
    if "/" in s:
        s, denom_text = s.split("/", 1)
        try:
            denominator = float(denom_text)
        except ValueError:
            raise DomainError(f"cannot parse angle denominator {denom_text!r}") from None
        if denominator == 0.0:
            raise DomainError("angle denominator is zero")
    if "*" in s:
        num_text, s = s.split("*", 1)
        try:
            numerator = float(num_text)
        except ValueError:
            raise DomainError(f"cannot parse angle factor {num_text!r}") from None
    if s != "pi":
        raise DomainError(f"cannot parse angle {text!r}")
    return sign * numerator * math.pi / denominator


def load_config(path: str) -> dict:
    """Read a flat key=value run-configuration file.

    Blank lines and lines starting with '#' are skipped.  Unknown keys raise
    DomainError so typos do not pass silently.  'beta' accepts the same forms
    as parse_angle; 'max_steps' is an integer; 'out_prefix' stays a string;
    everything else is a float.
    """
    values: dict = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in CONFIG_KEYS:
                raise DomainError(f"{path}:{lineno}: unknown config key {key!r}")
            if key == "out_prefix":
                values[key] = value
            elif key == "beta":
                values[key] = parse_angle(value)
            elif key == "max_steps":
                values[key] = int(value)
            else:
                values[key] = float(value)
    return values

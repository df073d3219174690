"""Physical constants and the unit conversions used by the CLI.

Everything inside the package is SI. The CLI accepts the units quoted in
the literature on these devices: angular frequency in units of 1e9 rad/s
(written "GHz"), temperature in mK and lengths in mm.
"""

from dataclasses import dataclass

from .errors import DomainError

HBAR = 1.054571817e-34  # J s
K_BOLTZMANN = 1.380649e-23  # J / K

GIGA = 1e9


@dataclass(frozen=True)
class PhysConstants:
    hbar: float = HBAR
    k_boltzmann: float = K_BOLTZMANN


DEFAULT_CONSTANTS = PhysConstants()

FREQUENCY_UNITS = ("rad_per_s", "ghz_angular")
TEMPERATURE_UNITS = ("kelvin", "millikelvin")


def _check_nonnegative(value, what):
    if not value >= 0:  # also rejects NaN
        raise DomainError(f"{what} must be >= 0, got {value!r}")


def to_angular_frequency(value: float, unit: str = "rad_per_s") -> float:
    """Convert a frequency to rad/s.

    ``ghz_angular`` means 1e9 rad/s, not 2*pi*1e9 rad/s: "20π GHz" is
    20π x 1e9 rad/s.
    """
    _check_nonnegative(value, "frequency")
    if unit == "rad_per_s":
        return float(value)
    if unit == "ghz_angular":
        return float(value) * GIGA
    raise DomainError(f"unknown frequency unit {unit!r}; expected one of {FREQUENCY_UNITS}")


def to_kelvin(value: float, unit: str = "kelvin") -> float:
    _check_nonnegative(value, "temperature")
    if unit == "kelvin":
        return float(value)
    if unit == "millikelvin":
        return float(value) / 1000.0
    raise DomainError(f"unknown temperature unit {unit!r}; expected one of {TEMPERATURE_UNITS}")


def mm_to_m(value: float) -> float:
    _check_nonnegative(value, "length")
    return float(value) / 1000.0

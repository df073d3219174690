"""Circuit parameters and the mode-pair quantities derived from them.

A SQUID-terminated coplanar waveguide driven at ``omega_d`` emits photon
pairs at ``omega_d/2 +/- delta_omega``. In the weak-drive regime the
input/output relation is fixed by a single driving parameter ``f``, and
the input field is assumed thermal at the fridge temperature.
"""

import math
from dataclasses import dataclass, field

from .errors import DomainError
from .units import DEFAULT_CONSTANTS, PhysConstants

PERTURBATIVE_F_LIMIT = 0.2

WARN_PERTURBATIVE = "perturbative_validity"
WARN_UNPHYSICAL = "unphysical_cm"


@dataclass(frozen=True)
class CircuitParams:
    """Experimental knobs, all in SI.

    Attributes:
        omega_d: drive angular frequency (rad/s).
        epsilon: dimensionless modulation amplitude of the Josephson energy.
        delta_omega: detuning of the pair from omega_d/2 (rad/s). Negative
            values are accepted and simply swap the roles of the two modes.
        v: phase velocity in the line (m/s).
        l0_eff: static effective length of the SQUID mirror (m).
        temperature: temperature of the input field (K).
    """

    omega_d: float
    epsilon: float
    delta_omega: float
    v: float
    l0_eff: float
    temperature: float

    def __post_init__(self):
        for name in ("omega_d", "epsilon", "delta_omega", "v", "l0_eff", "temperature"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        if self.omega_d <= 0:
            raise DomainError(f"omega_d must be > 0, got {self.omega_d}")
        if self.v <= 0:
            raise DomainError(f"v must be > 0, got {self.v}")
        if self.l0_eff <= 0:
            raise DomainError(f"l0_eff must be > 0, got {self.l0_eff}")
        if self.temperature < 0:
            raise DomainError(f"temperature must be >= 0, got {self.temperature}")
        if self.epsilon < 0:
            raise DomainError(f"epsilon must be >= 0, got {self.epsilon}")
        if abs(self.delta_omega) >= self.omega_d / 2:
            raise DomainError(
                f"|delta_omega| = {abs(self.delta_omega)} must be < omega_d/2 = {self.omega_d / 2}"
                " (nonpositive mode frequency)"
            )

    @property
    def delta_omega_frac(self) -> float:
        return self.delta_omega / self.omega_d


@dataclass(frozen=True)
class ModePair:
    omega_plus: float
    omega_minus: float
    n_plus: float
    n_minus: float
    f: float
    warnings: frozenset = field(default=frozenset())


def mode_frequencies(params: CircuitParams) -> tuple[float, float]:
    """Return ``(omega_plus, omega_minus)`` = ``omega_d/2 +/- delta_omega``."""
    half = params.omega_d / 2
    if abs(params.delta_omega) >= half:
        raise DomainError("detuning leaves a nonpositive mode frequency")
    return half + params.delta_omega, half - params.delta_omega


def thermal_occupation(omega: float, temperature: float,
                       constants: PhysConstants = DEFAULT_CONSTANTS) -> float:
    """Bose-Einstein mean photon number ``1/(exp(hbar*omega/kT) - 1)``.

    Exactly zero at ``temperature == 0``.
    """
    if not omega > 0:
        raise DomainError(f"omega must be > 0, got {omega!r}")
    if temperature < 0:
        raise DomainError(f"temperature must be >= 0, got {temperature!r}")
    thermal_energy = constants.k_boltzmann * temperature
    if thermal_energy == 0:  # T = 0, or so small that kT underflows
        return 0.0
    x = constants.hbar * omega / thermal_energy
    # exp(-x)/(1 - exp(-x)) does not overflow for large x
    return math.exp(-x) / -math.expm1(-x)


def driving_parameter(params: CircuitParams) -> float:
    """``f = epsilon * L0_eff * sqrt(omega_plus * omega_minus) / v``."""
    w_plus, w_minus = mode_frequencies(params)
    return params.epsilon * params.l0_eff * math.sqrt(w_plus * w_minus) / params.v


def is_perturbative(params: CircuitParams, f: float | None = None) -> bool:
    """False when the weak-drive expansion should not be trusted.

    Soft bound: ``f > 0.2`` or a modulation amplitude ``epsilon > 1``.
    """
    if f is None:
        f = driving_parameter(params)
    return f <= PERTURBATIVE_F_LIMIT and params.epsilon <= 1


def effective_mirror_velocity(params: CircuitParams, with_amplitude: bool = False) -> float:
    """Diagnostic mirror speed ``omega_d * L0_eff``.

    With ``with_amplitude=True`` returns ``omega_d * epsilon * L0_eff``, the
    speed implied by the length-modulation amplitude. Neither enters the
    Bell pipeline.
    """
    speed = params.omega_d * params.l0_eff
    if with_amplitude:
        speed *= params.epsilon
    return speed


def derive_mode_pair(params: CircuitParams,
                     constants: PhysConstants = DEFAULT_CONSTANTS) -> ModePair:
    w_plus, w_minus = mode_frequencies(params)
    f = driving_parameter(params)
    warnings = frozenset() if is_perturbative(params, f) else frozenset({WARN_PERTURBATIVE})
    return ModePair(
        omega_plus=w_plus,
        omega_minus=w_minus,
        n_plus=thermal_occupation(w_plus, params.temperature, constants),
        n_minus=thermal_occupation(w_minus, params.temperature, constants),
        f=f,
        warnings=warnings,
    )

"""Orientation-optimised CHSH value for the pseudospin Bell test.

With all azimuths zero, theta_a = 0, theta_a' = pi/2 and theta_b' = -theta_b,
the Bell operator reduces to

    2 (cos(theta_b) Pi_x (x) Pi_x + sin(theta_b) Pi_z (x) Pi_z),

whose expectation is maximised at theta_b = atan2(zz, xx) with value
2 sqrt(xx^2 + zz^2).
"""

import math
from dataclasses import dataclass, field

from .circuit import WARN_UNPHYSICAL, CircuitParams, derive_mode_pair
from .errors import DomainError
from .gaussian_state import StandardForm, apply_loss_minus, output_covariance, symplectic_eigenvalues
from .pseudospin import correlator_xx, correlator_zz

CLASSICAL_BOUND = 2.0


@dataclass(frozen=True)
class BellOutcome:
    xx: float
    zz: float
    theta_b_opt: float
    b_value: float
    violates: bool
    warnings: frozenset = field(default=frozenset())


def bell_from_correlators(xx: float, zz: float, warnings=frozenset()) -> BellOutcome:
    if math.isnan(xx) or math.isnan(zz):
        raise DomainError("correlators must not be NaN")
    b = 2 * math.hypot(xx, zz)
    return BellOutcome(
        xx=xx,
        zz=zz,
        theta_b_opt=math.atan2(zz, xx),
        b_value=b,
        violates=b > CLASSICAL_BOUND,
        warnings=frozenset(warnings),
    )


def _outcome(state: StandardForm, warnings) -> BellOutcome:
    warnings = set(warnings)
    if not symplectic_eigenvalues(state).physical:
        warnings.add(WARN_UNPHYSICAL)
    return bell_from_correlators(correlator_xx(state), correlator_zz(state), warnings)


def bell_for_params(params: CircuitParams) -> BellOutcome:
    pair = derive_mode_pair(params)
    return _outcome(output_covariance(pair), pair.warnings)


def bell_with_loss(params: CircuitParams, eta: float) -> BellOutcome:
    """Same as :func:`bell_for_params` after pure loss on the minus mode."""
    pair = derive_mode_pair(params)
    return _outcome(apply_loss_minus(output_covariance(pair), eta), pair.warnings)

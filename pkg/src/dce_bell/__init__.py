"""Bell-CHSH violation by dynamical-Casimir photon pairs in a SQUID-terminated waveguide."""

__version__ = "0.1.0"

from .bell import BellOutcome, bell_for_params, bell_from_correlators, bell_with_loss
from .circuit import CircuitParams, ModePair, derive_mode_pair
from .gaussian_state import StandardForm, apply_loss_minus, input_covariance, output_covariance
from .pseudospin import correlator_xx, correlator_zz
from .sweep import contour_b2, figure_preset, grid_sweep, reference_device, violation_threshold

__all__ = [
    "BellOutcome",
    "CircuitParams",
    "ModePair",
    "StandardForm",
    "apply_loss_minus",
    "bell_for_params",
    "bell_from_correlators",
    "bell_with_loss",
    "contour_b2",
    "correlator_xx",
    "correlator_zz",
    "derive_mode_pair",
    "figure_preset",
    "grid_sweep",
    "input_covariance",
    "output_covariance",
    "reference_device",
    "violation_threshold",
]

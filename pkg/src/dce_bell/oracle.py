"""Closed-form vs quadrature comparison over random standard-form states."""

import math
from dataclasses import dataclass

import numpy as np

from .gaussian_state import StandardForm
from .pseudospin import (
    DEFAULT_QUAD_TOL,
    correlator_xx,
    correlator_xx_quadrature,
    correlator_xx_sign_gaussian,
    correlator_zz,
    correlator_zz_quadrature,
)

REFERENCES = {
    "pipeline": correlator_xx,
    "sign-gaussian": correlator_xx_sign_gaussian,
}


def random_states(count: int, seed: int = 0, max_rho: float = 0.95) -> list[StandardForm]:
    """States with n, m in [1, 3] and correlation coefficient r/sqrt(nm) in [0, max_rho]."""
    rng = np.random.default_rng(seed)
    states = []
    for _ in range(count):
        n, m = rng.uniform(1.0, 3.0, size=2)
        rho = rng.uniform(0.0, max_rho)
        states.append(StandardForm(float(n), float(m), float(rho * math.sqrt(n * m))))
    return states


@dataclass(frozen=True)
class OracleReport:
    draws: int
    reference: str
    max_rel_dev_xx: float
    max_abs_dev_zz: float
    worst_state: StandardForm | None

    def passed(self, tol: float, zz_tol: float = 1e-12) -> bool:
        return self.max_rel_dev_xx <= tol and self.max_abs_dev_zz <= zz_tol

    def summary(self, tol: float) -> str:
        return (
            f"draws={self.draws} reference={self.reference} "
            f"max_rel_dev_xx={self.max_rel_dev_xx:.3e} max_abs_dev_zz={self.max_abs_dev_zz:.3e} "
            f"status={'PASS' if self.passed(tol) else 'FAIL'}"
        )


def compare(states, reference: str = "pipeline", tol_quad: float = DEFAULT_QUAD_TOL) -> OracleReport:
    """Worst deviation of the quadrature correlators from a closed form.

    The xx deviation is ``|quad - closed| / |closed|``, or ``|quad|`` where
    the closed form vanishes (uncorrelated states).
    """
    closed_xx = REFERENCES[reference]
    worst_xx, worst_zz, worst_state = 0.0, 0.0, None
    for s in states:
        ref = closed_xx(s)
        quad = correlator_xx_quadrature(s, tol_quad)
        dev = abs(quad - ref) / abs(ref) if ref else abs(quad)
        if dev > worst_xx:
            worst_xx, worst_state = dev, s
        worst_zz = max(worst_zz, abs(correlator_zz_quadrature(s) - correlator_zz(s)))
    return OracleReport(len(states), reference, worst_xx, worst_zz, worst_state)

"""Two-mode pseudospin correlators <Pi_x (x) Pi_x> and <Pi_z (x) Pi_z>.

Pi_x has Weyl symbol sgn(q) and Pi_z has symbol -pi delta(q) delta(p), so
each correlator is an overlap integral of the state's Wigner function
with a product of symbols. Two routes are provided:

* closed forms in ``(n, m, r)`` (fast path, used by the Bell pipeline);
* numerical overlaps against the Wigner function (oracle path).

The closed-form ``xx`` is ``(2/pi) arctan(r^2 / (nm - r^2))``, the
expression the published Bell thresholds are computed from. The sign
correlation of the state's q-marginal has the different closed form
``(2/pi) arcsin(r / sqrt(nm))`` (:func:`correlator_xx_sign_gaussian`).
The two agree only at r = 0; the quadrature follows the second.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .gaussian_state import VACUUM, StandardForm, wigner
from .quadrature import integrate_2d

DEFAULT_QUAD_TOL = 1e-8

# Overlap prefactor, fixed once by the vacuum anchor <Pi_z (x) Pi_z> = 1,
# i.e. kappa * pi^2 * W_vac(0) = 1.
OVERLAP_KAPPA = 1.0 / (math.pi ** 2 * wigner(VACUUM, (0.0, 0.0, 0.0, 0.0)))

CLOSED_FORM = "closed_form"
QUADRATURE = "quadrature"


@dataclass(frozen=True)
class CorrelatorPair:
    xx: float
    zz: float
    method: str = CLOSED_FORM


def correlator_xx(state: StandardForm) -> float:
    d = state.require_nonsingular()
    return 2 / math.pi * math.atan(state.r * state.r / d)


def correlator_xx_sign_gaussian(state: StandardForm) -> float:
    """``E[sgn(q-) sgn(q+)]`` of the Gaussian q-marginal, in closed form."""
    state.require_nonsingular()
    return 2 / math.pi * math.asin(state.r / math.sqrt(state.n * state.m))


def correlator_zz(state: StandardForm) -> float:
    return 1.0 / state.require_nonsingular()


def q_marginal_density(state: StandardForm, q_minus, q_plus):
    """Wigner function integrated analytically over both momenta.

    The momentum block of ``X^T V^-1 X`` is ``p^T [[m, r], [r, n]] p / D``
    with ``D = nm - r^2``; its Gaussian integral is ``pi sqrt(D)``.
    """
    d = state.require_nonsingular()
    n, m, r = state.n, state.m, state.r
    quad = (m * q_minus * q_minus + n * q_plus * q_plus - 2 * r * q_minus * q_plus) / d
    return np.exp(-quad) / (math.pi * math.sqrt(d))


def integration_half_width(state: StandardForm, tol: float) -> float:
    """Box half-width ``8 sqrt(max(n, m))``, widened until the tails are < tol/10."""
    half = 8 * math.sqrt(max(state.n, state.m))
    # P(|q| > L) = erfc(L / sqrt(n)) since Var(q-) = n/2
    while math.erfc(half / math.sqrt(state.n)) + math.erfc(half / math.sqrt(state.m)) > tol / 10:
        half *= 1.5
    return half


def correlator_xx_quadrature(state: StandardForm, tol: float = DEFAULT_QUAD_TOL,
                             max_panels: int = 50_000) -> float:
    """``kappa * integral sgn(q-) sgn(q+) Wbar(q-, q+)`` by adaptive cubature.

    The sign symbol is discontinuous on the axes, so each quadrant is
    integrated separately over a box of half-width
    :func:`integration_half_width`.
    """
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol!r}")
    state.require_nonsingular()
    half = integration_half_width(state, tol)

    def density(x, y):
        return q_marginal_density(state, x, y)

    total = 0.0
    for sx in (1.0, -1.0):
        for sy in (1.0, -1.0):
            lo_x, hi_x = sorted((0.0, sx * half))
            lo_y, hi_y = sorted((0.0, sy * half))
            try:
                value, _ = integrate_2d(density, lo_x, hi_x, lo_y, hi_y,
                                        rtol=tol / 8, atol=tol / 8, max_panels=max_panels)
            except ConvergenceError as exc:
                raise ConvergenceError(
                    f"xx quadrature did not converge: {exc}",
                    estimate=OVERLAP_KAPPA * (total + sx * sy * exc.estimate), error=exc.error,
                ) from exc
            total += sx * sy * value
    return OVERLAP_KAPPA * total


def correlator_zz_quadrature(state: StandardForm) -> float:
    """Delta-function symbols collapse the overlap to ``kappa pi^2 W(0)``."""
    return OVERLAP_KAPPA * math.pi ** 2 * wigner(state, (0.0, 0.0, 0.0, 0.0))


def correlators(state: StandardForm, method: str = CLOSED_FORM,
                tol: float = DEFAULT_QUAD_TOL) -> CorrelatorPair:
    if method == CLOSED_FORM:
        return CorrelatorPair(correlator_xx(state), correlator_zz(state), CLOSED_FORM)
    if method == QUADRATURE:
        return CorrelatorPair(correlator_xx_quadrature(state, tol),
                              correlator_zz_quadrature(state), QUADRATURE)
    raise DomainError(f"unknown correlator method {method!r}")

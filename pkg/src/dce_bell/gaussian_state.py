"""Two-mode Gaussian covariance matrices in standard form.

Quadrature ordering is ``(q-, p-, q+, p+)`` and the covariance matrix is
``V_ab = <R_a R_b + R_b R_a> - 2 <R_a><R_b>``, so the vacuum is the
identity. All states handled here are zero-mean and in the standard form

    [[n, 0, r, 0],
     [0, n, 0, -r],
     [r, 0, m, 0],
     [0, -r, 0, m]]

which is stored as the triple ``(n, m, r)``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .circuit import ModePair
from .errors import DomainError

PHYSICAL_TOL = 1e-9


@dataclass(frozen=True)
class StandardForm:
    """Standard-form covariance matrix ``(n, m, r)``.

    Construction only checks ``n, m > 0`` and ``r >= 0``. Singular or
    indefinite triples are allowed through so the operations that need
    ``n*m - r**2 > 0`` can report a domain error themselves.
    """

    n: float
    m: float
    r: float

    def __post_init__(self):
        for name in ("n", "m", "r"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        if self.n <= 0 or self.m <= 0:
            raise DomainError(f"diagonal entries must be > 0, got n={self.n}, m={self.m}")
        if self.r < 0:
            raise DomainError(f"correlation r must be >= 0, got {self.r}")

    @property
    def reduced_det(self) -> float:
        """``n*m - r**2``; the full determinant is its square."""
        return self.n * self.m - self.r * self.r

    def matrix(self) -> np.ndarray:
        n, m, r = self.n, self.m, self.r
        return np.array([
            [n, 0.0, r, 0.0],
            [0.0, n, 0.0, -r],
            [r, 0.0, m, 0.0],
            [0.0, -r, 0.0, m],
        ])

    def inverse_matrix(self) -> np.ndarray:
        d = self.require_nonsingular()
        n, m, r = self.n, self.m, self.r
        return np.array([
            [m, 0.0, -r, 0.0],
            [0.0, m, 0.0, r],
            [-r, 0.0, n, 0.0],
            [0.0, r, 0.0, n],
        ]) / d

    def require_nonsingular(self) -> float:
        d = self.reduced_det
        if not d > 0:
            raise DomainError(f"covariance matrix is singular or indefinite (nm - r^2 = {d})")
        return d

    @classmethod
    def from_matrix(cls, v, atol: float = 1e-12) -> "StandardForm":
        """Read ``(n, m, r)`` back from a 4x4 matrix, checking its structure."""
        v = np.asarray(v, dtype=float)
        if v.shape != (4, 4):
            raise DomainError(f"expected a 4x4 matrix, got shape {v.shape}")
        out = cls(float(v[0, 0]), float(v[2, 2]), float(v[0, 2]))
        if not np.allclose(v, out.matrix(), rtol=0.0, atol=atol):
            raise DomainError("matrix is not in two-mode standard form")
        return out


VACUUM = StandardForm(1.0, 1.0, 0.0)


@dataclass(frozen=True)
class SymplecticDiagnostics:
    """Symplectic spectrum of a standard-form state.

    ``nu_min``/``nu_max`` are the symplectic eigenvalues of V; a state is
    physical iff ``nu_min >= 1``. ``pt_nu_min``/``pt_nu_max`` belong to the
    partially transposed matrix; ``pt_nu_min < 1`` signals entanglement.
    """

    nu_min: float
    nu_max: float
    physical: bool
    pt_nu_min: float
    pt_nu_max: float


def input_covariance(pair: ModePair) -> StandardForm:
    """Thermal input: ``diag(2n- + 1, 2n- + 1, 2n+ + 1, 2n+ + 1)``."""
    return StandardForm(2 * pair.n_minus + 1, 2 * pair.n_plus + 1, 0.0)


def output_covariance(pair: ModePair) -> StandardForm:
    """Two-mode squeezed thermal state produced by the perturbative drive."""
    a = 2 * pair.n_minus + 1
    b = 2 * pair.n_plus + 1
    f = pair.f
    return StandardForm(a + f * f * b, b + f * f * a, 2 * f * (pair.n_plus + pair.n_minus + 1))


def _check_eta(eta):
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"transmission efficiency must lie in [0, 1], got {eta!r}")


def apply_loss_minus(state: StandardForm, eta: float) -> StandardForm:
    """Pure-loss channel of transmission ``eta`` on the minus mode."""
    _check_eta(eta)
    # 1 + eta (n - 1) rather than eta n + 1 - eta: exact at eta = 1
    return StandardForm(1 + eta * (state.n - 1), state.m, math.sqrt(eta) * state.r)


def beam_splitter(eta: float) -> np.ndarray:
    """Symplectic matrix mixing (ancilla, signal) with transmission ``eta``."""
    _check_eta(eta)
    t, s = math.sqrt(eta), math.sqrt(1 - eta)
    eye = np.eye(2)
    return np.block([[t * eye, -s * eye], [s * eye, t * eye]])


def apply_loss_minus_construction(state: StandardForm, eta: float) -> np.ndarray:
    """Loss by explicit dilation; returns the full 4x4 matrix.

    A vacuum ancilla is prepended (``V' = 1 (+) V``), the ancilla and the
    minus mode are mixed on a beam splitter, and the ancilla is traced out.
    """
    big = np.zeros((6, 6))
    big[:2, :2] = np.eye(2)
    big[2:, 2:] = state.matrix()
    s = np.eye(6)
    s[:4, :4] = beam_splitter(eta)
    mixed = s @ big @ s.T
    return mixed[2:, 2:]


def wigner(state: StandardForm, x) -> np.ndarray | float:
    """Normalized Wigner function ``exp(-X^T V^-1 X) / (pi^2 sqrt(det V))``.

    ``x`` is one phase-space point ``(q-, p-, q+, p+)`` or an array whose
    last axis has length 4.
    """
    d = state.require_nonsingular()
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != 4:
        raise DomainError(f"phase-space points need 4 coordinates, got shape {x.shape}")
    qm, pm, qp, pp = np.moveaxis(x, -1, 0)
    n, m, r = state.n, state.m, state.r
    quad = (m * (qm * qm + pm * pm) + n * (qp * qp + pp * pp) - 2 * r * (qm * qp - pm * pp)) / d
    out = np.exp(-quad) / (math.pi ** 2 * d)
    return float(out) if out.ndim == 0 else out


def symplectic_eigenvalues(state: StandardForm) -> SymplecticDiagnostics:
    n, m, r = state.n, state.m, state.r
    d = state.reduced_det

    # nu^2 = (Delta -/+ sqrt(Delta^2 - 4 det V)) / 2 with Delta = n^2 + m^2 - 2 r^2;
    # the discriminant factorises as (n - m)^2 ((n + m)^2 - 4 r^2).
    spread = (n + m) ** 2 - 4 * r * r
    delta = n * n + m * m - 2 * r * r
    if d <= 0 or spread < 0:
        nu_min, nu_max = 0.0, math.sqrt(max(delta, 0.0))
    else:
        root = abs(n - m) * math.sqrt(spread)
        lo_sq = (delta - root) / 2
        nu_min = math.sqrt(lo_sq) if lo_sq > 0 else 0.0
        nu_max = math.sqrt((delta + root) / 2)

    pt_root = math.hypot(n - m, 2 * r)
    return SymplecticDiagnostics(
        nu_min=nu_min,
        nu_max=nu_max,
        physical=nu_min >= 1 - PHYSICAL_TOL,
        pt_nu_min=(n + m - pt_root) / 2,
        pt_nu_max=(n + m + pt_root) / 2,
    )

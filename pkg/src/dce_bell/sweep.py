"""Parameter grids, violation thresholds and B = 2 contours.

Axis values are in figure units: ``temperature`` in mK, ``delta_omega_frac``
as delta_omega / omega_d, ``epsilon`` and ``eta`` dimensionless.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from skimage.measure import find_contours

from .bell import CLASSICAL_BOUND, BellOutcome, bell_for_params, bell_with_loss
from .circuit import CircuitParams
from .errors import BracketError, ConfigError, DomainError

AXIS_COLUMNS = {
    "epsilon": "epsilon",
    "temperature": "temperature_mK",
    "delta_omega_frac": "delta_omega_frac",
    "eta": "eta",
}
OUTCOME_FIELDS = ("xx", "zz", "theta_b_opt", "b_value", "violates", "warnings")
DEFAULT_FIELDS = ("xx", "zz", "b_value", "violates", "warnings")

DEFAULT_COUNT = 201
DEFAULT_CONTOUR_TOL = 1e-6
THRESHOLD_TOL = 1e-9
_MAX_BISECTIONS = 200

DEVICE_OMEGA_D = 20 * math.pi * 1e9  # rad/s
DEVICE_V = 1.2e8  # m/s
DEVICE_L0_EFF = 0.5e-3  # m
DEVICE_EPSILON = 0.6


def reference_device(epsilon=DEVICE_EPSILON, temperature_mk=20.0, delta_omega_frac=0.0) -> CircuitParams:
    """The device of the reference figures: omega_d = 20 pi GHz, v = 1.2e8 m/s, L0 = 0.5 mm."""
    return CircuitParams(
        omega_d=DEVICE_OMEGA_D,
        epsilon=epsilon,
        delta_omega=delta_omega_frac * DEVICE_OMEGA_D,
        v=DEVICE_V,
        l0_eff=DEVICE_L0_EFF,
        temperature=temperature_mk / 1000.0,
    )


@dataclass(frozen=True)
class Axis:
    """One sweep axis; ``points`` overrides the linspace when given."""

    name: str
    min: float
    max: float
    count: int = DEFAULT_COUNT
    points: tuple | None = None

    def __post_init__(self):
        if self.name not in AXIS_COLUMNS:
            raise ConfigError(f"unknown axis {self.name!r}; expected one of {sorted(AXIS_COLUMNS)}")
        if not (math.isfinite(self.min) and math.isfinite(self.max)) or not self.min < self.max:
            raise ConfigError(f"axis {self.name}: need min < max, got [{self.min}, {self.max}]")
        if self.count < 2:
            raise ConfigError(f"axis {self.name}: need count >= 2, got {self.count}")
        if self.points is not None and (len(self.points) != self.count
                                        or list(self.points) != sorted(self.points)):
            raise ConfigError(f"axis {self.name}: explicit points must be sorted and match count")
        if self.min < 0:
            raise ConfigError(f"axis {self.name}: values must be >= 0")
        if self.name == "delta_omega_frac" and self.max >= 0.5:
            raise ConfigError("axis delta_omega_frac: values must be < 0.5")
        if self.name == "eta" and self.max > 1:
            raise ConfigError("axis eta: values must be <= 1")

    @classmethod
    def parse(cls, text: str) -> "Axis":
        """Parse ``name:min:max:count``."""
        parts = text.split(":")
        if len(parts) != 4:
            raise ConfigError(f"axis spec {text!r} is not name:min:max:count")
        name, lo, hi, count = parts
        try:
            return cls(name, float(lo), float(hi), int(count))
        except ValueError as exc:
            raise ConfigError(f"axis spec {text!r}: {exc}") from exc

    @classmethod
    def from_points(cls, name: str, points) -> "Axis":
        points = tuple(float(p) for p in points)
        return cls(name, points[0], points[-1], len(points), points)

    @property
    def column(self) -> str:
        return AXIS_COLUMNS[self.name]

    def values(self) -> np.ndarray:
        if self.points is not None:
            return np.array(self.points)
        return np.linspace(self.min, self.max, self.count)

    def at(self, index: float) -> float:
        """Axis value at a fractional grid index (linear between nodes)."""
        vals = self.values()
        return float(np.interp(index, np.arange(len(vals)), vals))

    def describe(self) -> dict:
        out = {"name": self.name, "min": self.min, "max": self.max, "count": self.count}
        if self.points is not None:
            out["points"] = list(self.points)
        return out


@dataclass(frozen=True)
class SweepSpec:
    base: CircuitParams
    axis1: Axis
    axis2: Axis | None = None
    loss_eta: float | None = None
    output_fields: tuple = DEFAULT_FIELDS
    preset: str | None = None

    def __post_init__(self):
        if self.axis2 is not None and self.axis2.name == self.axis1.name:
            raise ConfigError("axis1 and axis2 must sweep different parameters")
        bad = [f for f in self.output_fields if f not in OUTCOME_FIELDS]
        if bad:
            raise ConfigError(f"unknown output fields {bad}; expected a subset of {OUTCOME_FIELDS}")
        if self.loss_eta is not None and not 0 <= self.loss_eta <= 1:
            raise ConfigError(f"eta must lie in [0, 1], got {self.loss_eta}")
        # every grid corner must map onto valid circuit parameters
        for a in self.axes:
            for value in (a.min, a.max):
                _params_at(self.base, {a.name: value})

    @property
    def axes(self) -> tuple:
        return (self.axis1,) if self.axis2 is None else (self.axis1, self.axis2)

    @property
    def columns(self) -> tuple:
        return tuple(a.column for a in self.axes) + tuple(self.output_fields)

    def describe(self) -> dict:
        b = self.base
        return {
            "preset": self.preset,
            "base": {
                "omega_d_rad_per_s": b.omega_d,
                "epsilon": b.epsilon,
                "delta_omega_rad_per_s": b.delta_omega,
                "v_m_per_s": b.v,
                "l0_eff_m": b.l0_eff,
                "temperature_K": b.temperature,
            },
            "eta": self.loss_eta,
            "axes": [a.describe() for a in self.axes],
            "output_fields": list(self.output_fields),
        }


def _params_at(base: CircuitParams, assignment: dict) -> CircuitParams:
    changes = {}
    for name, value in assignment.items():
        if name == "epsilon":
            changes["epsilon"] = value
        elif name == "temperature":
            changes["temperature"] = value / 1000.0
        elif name == "delta_omega_frac":
            changes["delta_omega"] = value * base.omega_d
    try:
        return replace(base, **changes)
    except DomainError as exc:
        raise ConfigError(f"invalid sweep point {assignment}: {exc}") from exc


def evaluate(base: CircuitParams, assignment: dict, eta: float | None = None) -> BellOutcome:
    """Bell outcome at ``base`` with the axis values in ``assignment`` substituted."""
    eta = assignment.get("eta", eta)
    params = _params_at(base, assignment)
    if eta is None:
        return bell_for_params(params)
    return bell_with_loss(params, eta)


def grid_sweep(spec: SweepSpec) -> list[dict]:
    """Evaluate the grid; rows are ordered axis2-major, then axis1."""
    outer = spec.axis2.values() if spec.axis2 is not None else [None]
    rows = []
    for v2 in outer:
        for v1 in spec.axis1.values():
            assignment = {spec.axis1.name: float(v1)}
            if v2 is not None:
                assignment[spec.axis2.name] = float(v2)
            outcome = evaluate(spec.base, assignment, spec.loss_eta)
            row = {spec.axis1.column: float(v1)}
            if v2 is not None:
                row[spec.axis2.column] = float(v2)
            for name in spec.output_fields:
                row[name] = getattr(outcome, name)
            rows.append(row)
    return rows


def _bisect(g, lo, hi, g_lo, tol):
    """Bisect the violation boundary of ``g`` on ``[lo, hi]``.

    ``g > 0`` is the violating side; ``g == 0`` counts as non-violating.
    """
    width = hi - lo
    lo_violates = g_lo > 0
    mid, g_mid = lo, g_lo
    for _ in range(_MAX_BISECTIONS):
        mid = (lo + hi) / 2
        g_mid = g(mid)
        if abs(g_mid) <= tol or hi - lo <= THRESHOLD_TOL * width:
            break
        if (g_mid > 0) == lo_violates:
            lo = mid
        else:
            hi = mid
    return mid, g_mid


def violation_threshold(base: CircuitParams, axis: str, bracket: tuple,
                        eta: float | None = None, tol: float = THRESHOLD_TOL) -> float:
    """Axis value in ``bracket`` where the Bell value crosses 2.

    The remaining parameters come from ``base`` (and ``eta``, unless the
    free axis is ``eta`` itself). Bisection stops at ``|b - 2| <= tol`` or
    once the interval shrinks below ``1e-9`` of the bracket.
    """
    if axis not in AXIS_COLUMNS:
        raise ConfigError(f"unknown axis {axis!r}")
    lo, hi = map(float, bracket)
    if not lo < hi:
        raise ConfigError(f"bracket must satisfy lo < hi, got {bracket}")

    def g(x):
        return evaluate(base, {axis: x}, eta).b_value - CLASSICAL_BOUND

    g_lo, g_hi = g(lo), g(hi)
    if (g_lo > 0) == (g_hi > 0):
        raise BracketError(
            f"no violation boundary in {axis} bracket [{lo}, {hi}]: b - 2 = {g_lo:.3e}, {g_hi:.3e}"
        )
    return _bisect(g, lo, hi, g_lo, tol)[0]


@dataclass(frozen=True)
class ContourResult:
    """Points on the B = 2 curve, one list per connected branch."""

    level: float = CLASSICAL_BOUND
    segments: tuple = ()
    refined: bool = False
    residual: float = 0.0
    columns: tuple = ()

    @property
    def points(self) -> list:
        return [p for seg in self.segments for p in seg]


def contour_b2(spec: SweepSpec, contour_tol: float = DEFAULT_CONTOUR_TOL) -> ContourResult:
    """Trace B = 2 by marching squares, then bisect each crossing on its grid edge."""
    if spec.axis2 is None:
        raise ConfigError("contour extraction needs two axes")
    if not contour_tol > 0:
        raise ConfigError(f"contour_tol must be > 0, got {contour_tol}")
    rows = grid_sweep(replace(spec, output_fields=("b_value",)))
    n1, n2 = spec.axis1.count, spec.axis2.count
    field_ = np.array([row["b_value"] for row in rows]).reshape(n2, n1) - CLASSICAL_BOUND
    # ties sit on the non-violating side
    field_[field_ == 0.0] = -np.finfo(float).tiny

    ax1, ax2 = spec.axis1, spec.axis2
    segments = []
    worst = 0.0
    for path in find_contours(field_, 0.0):
        seg = []
        for i2, i1 in path:
            if abs(i2 - round(i2)) < 1e-9:
                j = int(round(i2))
                k = min(int(math.floor(i1)), n1 - 2)
                fixed = {ax2.name: ax2.at(j)}
                free, lo, hi, g_lo = ax1, ax1.at(k), ax1.at(k + 1), field_[j, k]
            else:
                k = int(round(i1))
                j = min(int(math.floor(i2)), n2 - 2)
                fixed = {ax1.name: ax1.at(k)}
                free, lo, hi, g_lo = ax2, ax2.at(j), ax2.at(j + 1), field_[j, k]

            def g(x, free=free, fixed=fixed):
                return evaluate(spec.base, {**fixed, free.name: x}, spec.loss_eta).b_value - CLASSICAL_BOUND

            x, gx = _bisect(g, lo, hi, g_lo, contour_tol)
            worst = max(worst, abs(gx))
            point = {**fixed, free.name: x}
            seg.append((point[ax1.name], point[ax2.name]))
        segments.append(tuple(seg))
    return ContourResult(
        level=CLASSICAL_BOUND,
        segments=tuple(segments),
        refined=worst <= contour_tol,
        residual=worst,
        columns=(ax1.column, ax2.column),
    )


_FIG_AXES = {
    # fig id: (axis1, axis2, base overrides)
    "fig2": (("epsilon", 0.0, 0.6), ("delta_omega_frac", 0.0, 0.45), {"temperature_mk": 20.0}),
    "fig3": (("temperature", 0.0, 50.0), ("delta_omega_frac", 0.0, 0.45), {}),
    "fig4": (("epsilon", 0.0, 0.6), ("eta", 0.1, 1.0), {"temperature_mk": 20.0}),
    "fig5": (("temperature", 0.0, 50.0), ("eta", 0.1, 1.0), {}),
    "fig6": (("eta", 0.1, 1.0), ("delta_omega_frac", 0.0, 0.45), {"temperature_mk": 20.0}),
    "fig7": (("temperature", 10.0, 35.0), ("eta", 0.1, 1.0), {"delta_omega_frac": 0.2}),
}
FIGURES = ("fig1",) + tuple(_FIG_AXES)


def figure_preset(fig_id: str, count: int = DEFAULT_COUNT) -> SweepSpec:
    """Sweep reproducing one of the seven reference figures.

    All share omega_d = 20 pi GHz, v = 1.2e8 m/s and L0_eff = 0.5 mm; the
    caption-fixed epsilon is 0.6.
    """
    if fig_id == "fig1":
        return SweepSpec(
            base=reference_device(temperature_mk=15.0),
            axis1=Axis("epsilon", 0.0, 0.6, count),
            axis2=Axis.from_points("temperature", (15.0, 30.0, 35.0)),
            preset=fig_id,
        )
    if fig_id not in _FIG_AXES:
        raise ConfigError(f"unknown figure {fig_id!r}; expected one of {FIGURES}")
    (n1, lo1, hi1), (n2, lo2, hi2), overrides = _FIG_AXES[fig_id]
    return SweepSpec(
        base=reference_device(**overrides),
        axis1=Axis(n1, lo1, hi1, count),
        axis2=Axis(n2, lo2, hi2, count),
        preset=fig_id,
    )

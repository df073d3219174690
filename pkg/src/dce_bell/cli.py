"""Command-line interface.

Subcommands: ``point``, ``sweep``, ``contour``, ``figure <fig1..fig7>`` and
``oracle-check``. Data goes to ``--out`` (default stdout), diagnostics to
stderr. Exit codes: 0 success, 1 oracle mismatch, 2 configuration error,
3 numerical failure, 4 I/O failure.
"""

import argparse
import math
import sys

from . import __version__
from .bell import bell_for_params, bell_with_loss
from .circuit import CircuitParams, derive_mode_pair, effective_mirror_velocity
from .errors import BracketError, ConfigError, ConvergenceError, DomainError
from .gaussian_state import apply_loss_minus, output_covariance, symplectic_eigenvalues
from .oracle import REFERENCES, compare, random_states
from .output import write_table, write_text
from .pseudospin import DEFAULT_QUAD_TOL, correlator_xx_sign_gaussian
from .sweep import (
    DEFAULT_CONTOUR_TOL,
    DEFAULT_COUNT,
    FIGURES,
    DEVICE_EPSILON,
    DEVICE_L0_EFF,
    DEVICE_OMEGA_D,
    DEVICE_V,
    Axis,
    SweepSpec,
    contour_b2,
    figure_preset,
    grid_sweep,
)
from .units import GIGA, mm_to_m, to_angular_frequency, to_kelvin

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

DEFAULTS = {
    "omega-d-ghz": DEVICE_OMEGA_D / GIGA,
    "omega-d-rads": None,
    "epsilon": DEVICE_EPSILON,
    "detuning-frac": 0.0,
    "temp-mk": 15.0,
    "v": DEVICE_V,
    "l0-eff-mm": DEVICE_L0_EFF * 1000,
    "eta": None,
    "axis1": None,
    "axis2": None,
    "format": None,
    "out": None,
    "tol-quad": DEFAULT_QUAD_TOL,
    "tol-contour": DEFAULT_CONTOUR_TOL,
    "draws": 100,
    "tol": 1e-6,
    "seed": 0,
    "count": DEFAULT_COUNT,
    "preset": None,
    "reference": "pipeline",
}
FLOAT_KEYS = {"omega-d-ghz", "omega-d-rads", "epsilon", "detuning-frac", "temp-mk", "v",
              "l0-eff-mm", "eta", "tol-quad", "tol-contour", "tol"}
INT_KEYS = {"draws", "seed", "count"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _dest(key):
    return key.replace("-", "_")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", help="output path (default: stdout)")
    circuit = _Parser(add_help=False)
    freq = circuit.add_mutually_exclusive_group()
    freq.add_argument("--omega-d-ghz", type=float, help="drive frequency in 1e9 rad/s (default 20*pi)")
    freq.add_argument("--omega-d-rads", type=float, help="drive frequency in rad/s")
    circuit.add_argument("--epsilon", type=float, help="drive amplitude (default 0.6)")
    circuit.add_argument("--detuning-frac", type=float, help="delta_omega / omega_d (default 0)")
    circuit.add_argument("--temp-mk", type=float, help="temperature in mK (default 15)")
    circuit.add_argument("--v", type=float, help="light speed in the line, m/s (default 1.2e8)")
    circuit.add_argument("--l0-eff-mm", type=float, help="effective SQUID length in mm (default 0.5)")
    circuit.add_argument("--eta", type=float, help="transmission of the minus mode (default: no loss)")

    parser = _Parser(prog="dce-bell", description="Bell-CHSH violation by dynamical Casimir photon pairs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("point", parents=[common, circuit], help="evaluate one parameter point")

    p = sub.add_parser("sweep", parents=[common, circuit], help="grid sweep over one or two axes")
    p.add_argument("--axis1", help="name:min:max:count (temperature in mK)")
    p.add_argument("--axis2", help="name:min:max:count")

    p = sub.add_parser("contour", parents=[common, circuit], help="B = 2 curve on a 2-D grid")
    p.add_argument("--axis1")
    p.add_argument("--axis2")
    p.add_argument("--preset", choices=FIGURES, help="take the grid from a figure preset")
    p.add_argument("--count", type=int, help="grid points per axis for --preset")
    p.add_argument("--tol-contour", type=float)

    p = sub.add_parser("figure", parents=[common], help="grid sweep of a figure preset")
    p.add_argument("fig_id", choices=FIGURES)
    p.add_argument("--count", type=int, help=f"grid points per axis (default {DEFAULT_COUNT})")

    p = sub.add_parser("oracle-check", parents=[common], help="closed forms vs quadrature")
    p.add_argument("--draws", type=int)
    p.add_argument("--tol", type=float, help="allowed relative xx deviation (default 1e-6)")
    p.add_argument("--tol-quad", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--reference", choices=sorted(REFERENCES))
    return parser


def read_config(path) -> dict:
    """Flat ``key = value`` file; keys are long flag names without dashes."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("_", "-")
        if key not in DEFAULTS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = float(value) if key in FLOAT_KEYS else int(value) if key in INT_KEYS else value
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return out


def resolve(args) -> dict:
    """Merge defaults, config file and flags (flags win)."""
    file_values = read_config(args.config) if getattr(args, "config", None) else {}
    cli_values = {k: getattr(args, _dest(k)) for k in DEFAULTS
                  if getattr(args, _dest(k), None) is not None}
    opts = dict(DEFAULTS)
    opts.update(file_values)
    if "omega-d-rads" in cli_values or ("omega-d-rads" in file_values and "omega-d-ghz" not in cli_values):
        opts["omega-d-ghz"] = None
    if "omega-d-ghz" in cli_values:
        opts["omega-d-rads"] = None
    opts.update(cli_values)
    if opts["omega-d-ghz"] is not None and opts["omega-d-rads"] is not None:
        raise ConfigError("give only one of omega-d-ghz and omega-d-rads")
    return opts


def circuit_from_options(opts) -> CircuitParams:
    try:
        if opts["omega-d-rads"] is not None:
            omega_d = to_angular_frequency(opts["omega-d-rads"], "rad_per_s")
        else:
            omega_d = to_angular_frequency(opts["omega-d-ghz"], "ghz_angular")
        return CircuitParams(
            omega_d=omega_d,
            epsilon=opts["epsilon"],
            delta_omega=opts["detuning-frac"] * omega_d,
            v=opts["v"],
            l0_eff=mm_to_m(opts["l0-eff-mm"]),
            temperature=to_kelvin(opts["temp-mk"], "millikelvin"),
        )
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def _meta(command, opts, params=None, **extra) -> dict:
    meta = {"tool": "dce-bell", "version": __version__, "command": command}
    if params is not None:
        meta["params"] = {
            "omega_d_rad_per_s": params.omega_d,
            "epsilon": params.epsilon,
            "delta_omega_rad_per_s": params.delta_omega,
            "v_m_per_s": params.v,
            "l0_eff_m": params.l0_eff,
            "temperature_K": params.temperature,
        }
        meta["eta"] = opts["eta"]
    meta.update(extra)
    return meta


def _cmd_point(opts):
    params = circuit_from_options(opts)
    eta = opts["eta"]
    pair = derive_mode_pair(params)
    state = output_covariance(pair)
    if eta is not None:
        state = apply_loss_minus(state, eta)
        outcome = bell_with_loss(params, eta)
    else:
        outcome = bell_for_params(params)
    diag = symplectic_eigenvalues(state)
    row = {
        "f": pair.f,
        "omega_minus": pair.omega_minus,
        "omega_plus": pair.omega_plus,
        "n_minus": pair.n_minus,
        "n_plus": pair.n_plus,
        "n": state.n,
        "m": state.m,
        "r": state.r,
        "xx": outcome.xx,
        "zz": outcome.zz,
        "theta_b_opt": outcome.theta_b_opt,
        "b_value": outcome.b_value,
        "violates": outcome.violates,
        "warnings": outcome.warnings,
        "nu_min": diag.nu_min,
        "pt_nu_min": diag.pt_nu_min,
        "xx_sign_gaussian": correlator_xx_sign_gaussian(state),
        "v_eff": effective_mirror_velocity(params),
        "v_eff_amplitude": effective_mirror_velocity(params, with_amplitude=True),
    }
    meta = _meta("point", opts, params)
    write_table([row], list(row), opts["format"] or "json", opts["out"], meta)


def _emit_sweep(spec, opts, command):
    rows = grid_sweep(spec)
    meta = _meta(command, opts, **{"spec": spec.describe(), "rows": len(rows)})
    write_table(rows, spec.columns, opts["format"] or "csv", opts["out"], meta)


def _spec_from_axes(opts, need_two):
    if not opts["axis1"]:
        raise ConfigError("--axis1 is required")
    if need_two and not opts["axis2"]:
        raise ConfigError("--axis2 is required")
    axis2 = Axis.parse(opts["axis2"]) if opts["axis2"] else None
    return SweepSpec(base=circuit_from_options(opts), axis1=Axis.parse(opts["axis1"]),
                     axis2=axis2, loss_eta=opts["eta"])


def _cmd_sweep(opts):
    _emit_sweep(_spec_from_axes(opts, need_two=False), opts, "sweep")


def _cmd_figure(opts, fig_id):
    _emit_sweep(figure_preset(fig_id, opts["count"]), opts, "figure")


def _cmd_contour(opts):
    if opts["preset"]:
        spec = figure_preset(opts["preset"], opts["count"])
        if spec.axis2 is None or spec.axis2.points is not None:
            raise ConfigError(f"preset {opts['preset']} has no continuous second axis")
    else:
        spec = _spec_from_axes(opts, need_two=True)
    tol = opts["tol-contour"]
    result = contour_b2(spec, tol)
    c1, c2 = result.columns
    rows = [{"segment": k, c1: a, c2: b}
            for k, seg in enumerate(result.segments) for a, b in seg]
    meta = _meta("contour", opts, spec=spec.describe(), contour_tol=tol, level=result.level,
                 refined=result.refined, max_residual=result.residual, points=len(rows))
    if not result.refined:
        print(f"warning: contour residual {result.residual:.3e} exceeds {tol:.1e}", file=sys.stderr)
    write_table(rows, ["segment", c1, c2], opts["format"] or "csv", opts["out"], meta)


def _cmd_oracle(opts):
    if opts["draws"] < 1:
        raise ConfigError("--draws must be >= 1")
    if not opts["tol"] > 0 or not opts["tol-quad"] > 0:
        raise ConfigError("tolerances must be > 0")
    states = random_states(opts["draws"], opts["seed"])
    report = compare(states, opts["reference"], opts["tol-quad"])
    write_text(report.summary(opts["tol"]) + "\n", opts["out"])
    if not report.passed(opts["tol"]):
        w = report.worst_state
        print(f"oracle mismatch; worst state n={w.n:.6g} m={w.m:.6g} r={w.r:.6g}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        opts = resolve(args)
        if opts["eta"] is not None and not 0 <= opts["eta"] <= 1:
            raise ConfigError(f"eta must lie in [0, 1], got {opts['eta']}")
        if not math.isfinite(opts["tol-contour"]) or opts["tol-contour"] <= 0:
            raise ConfigError("--tol-contour must be > 0")
        if args.command == "point":
            _cmd_point(opts)
        elif args.command == "sweep":
            _cmd_sweep(opts)
        elif args.command == "contour":
            _cmd_contour(opts)
        elif args.command == "figure":
            _cmd_figure(opts, args.fig_id)
        else:
            return _cmd_oracle(opts)
        return EXIT_OK
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, BracketError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

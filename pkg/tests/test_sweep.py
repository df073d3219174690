import math

import numpy as np
import pytest

from dce_bell.errors import BracketError, ConfigError
from dce_bell.sweep import (
    FIGURES,
    Axis,
    SweepSpec,
    contour_b2,
    evaluate,
    figure_preset,
    grid_sweep,
    reference_device,
    violation_threshold,
)

# --- axes and specs -------------------------------------------------------


def test_axis_parse():
    a = Axis.parse("epsilon:0:0.6:7")
    assert (a.name, a.min, a.max, a.count) == ("epsilon", 0.0, 0.6, 7)
    np.testing.assert_allclose(a.values(), np.linspace(0, 0.6, 7))
    assert Axis.parse("temperature:10:35:3").column == "temperature_mK"


@pytest.mark.parametrize("text", [
    "epsilon:0.3:0.3:5",        # min == max
    "epsilon:0:0.6:1",          # count < 2
    "epsilon:0:0.6",            # missing field
    "epsilon:zero:0.6:5",       # not a number
    "voltage:0:1:5",            # unknown axis
    "delta_omega_frac:0:0.5:5",  # zero-frequency mode
    "eta:0:1.5:5",
    "temperature:-5:20:5",
])
def test_axis_rejects(text):
    with pytest.raises(ConfigError):
        Axis.parse(text)


def test_spec_rejects_duplicate_axes_and_bad_eta():
    base = reference_device()
    with pytest.raises(ConfigError):
        SweepSpec(base, Axis("epsilon", 0, 0.6, 3), Axis("epsilon", 0, 0.3, 3))
    with pytest.raises(ConfigError):
        SweepSpec(base, Axis("epsilon", 0, 0.6, 3), loss_eta=1.2)
    with pytest.raises(ConfigError):
        SweepSpec(base, Axis("epsilon", 0, 0.6, 3), output_fields=("b_value", "entropy"))


def test_grid_order_and_shape():
    spec = SweepSpec(reference_device(), Axis("epsilon", 0.2, 0.6, 2), Axis("temperature", 15, 30, 2))
    rows = grid_sweep(spec)
    assert len(rows) == 4
    assert [(r["epsilon"], r["temperature_mK"]) for r in rows] == [
        (0.2, 15.0), (0.6, 15.0), (0.2, 30.0), (0.6, 30.0)]
    assert list(rows[0]) == list(spec.columns)


def test_grid_rows_match_pointwise_evaluation():
    spec = SweepSpec(reference_device(), Axis("eta", 0.1, 1.0, 4), Axis("delta_omega_frac", 0, 0.4, 3))
    for row in grid_sweep(spec):
        out = evaluate(spec.base, {"eta": row["eta"], "delta_omega_frac": row["delta_omega_frac"]})
        assert row["b_value"] == out.b_value


def test_fig1_row():
    rows = grid_sweep(figure_preset("fig1", count=7))
    row = next(r for r in rows if r["epsilon"] == 0.6 and r["temperature_mK"] == 15.0)
    assert row["b_value"] == pytest.approx(2.025, abs=1e-3)
    assert row["violates"] is True
    assert {r["temperature_mK"] for r in rows} == {15.0, 30.0, 35.0}


# --- thresholds -----------------------------------------------------------

def test_detuning_threshold():
    x = violation_threshold(reference_device(temperature_mk=20), "delta_omega_frac", (0, 0.45))
    assert x == pytest.approx(0.27, abs=0.02)


def test_temperature_threshold():
    assert violation_threshold(reference_device(), "temperature", (1, 60)) == pytest.approx(41.6, abs=0.5)


def test_eta_threshold():
    assert violation_threshold(reference_device(temperature_mk=20), "eta", (0, 1)) == pytest.approx(0.35, abs=0.02)


def test_threshold_lands_on_boundary():
    base = reference_device(temperature_mk=35)
    x = violation_threshold(base, "epsilon", (0, 0.6))
    assert abs(evaluate(base, {"epsilon": x}).b_value - 2) <= 1e-9


def test_threshold_without_crossing():
    with pytest.raises(BracketError):
        violation_threshold(reference_device(temperature_mk=20), "eta", (0.6, 1.0))
    with pytest.raises(ConfigError):
        violation_threshold(reference_device(), "eta", (1.0, 0.5))


# --- contours -------------------------------------------------------------

def test_contour_points_sit_on_b_equals_two():
    spec = figure_preset("fig5", count=21)
    tol = 1e-8
    res = contour_b2(spec, contour_tol=tol)
    assert res.refined and res.residual <= tol
    assert res.columns == ("temperature_mK", "eta")
    assert len(res.points) > 10
    for t, eta in res.points:
        assert abs(evaluate(spec.base, {"temperature": t, "eta": eta}).b_value - 2) <= tol


def test_contour_empty_when_everywhere_violating():
    spec = SweepSpec(reference_device(), Axis("temperature", 0, 20, 5), Axis("eta", 0.8, 1.0, 5))
    res = contour_b2(spec)
    assert res.segments == () and res.refined


def test_contour_needs_two_axes():
    with pytest.raises(ConfigError):
        contour_b2(SweepSpec(reference_device(), Axis("epsilon", 0, 0.6, 3)))


def test_fig7_contour_ceiling():
    res = contour_b2(figure_preset("fig7", count=41))
    t_max = max(t for t, _ in res.points)
    assert t_max == pytest.approx(28.0, abs=1.0)
    # the hottest point is where nothing is lost; |b - 2| <= 1e-6 is ~1e-4 mK here
    at_top = violation_threshold(reference_device(delta_omega_frac=0.2), "temperature", (10, 35), eta=1.0)
    assert t_max == pytest.approx(at_top, abs=5e-4)


def test_threshold_and_contour_agree():
    tol = 1e-7
    res = contour_b2(figure_preset("fig3", count=31), contour_tol=tol)
    on_axis = [t for t, frac in res.points if frac == 0.0]
    assert len(on_axis) == 1
    thr = violation_threshold(reference_device(), "temperature", (0, 50))
    # slope dB/dT is O(1e-2) per mK, so |b - 2| <= tol maps to ~1e-5 mK
    assert on_axis[0] == pytest.approx(thr, abs=1e3 * tol)


def test_contour_converges_under_grid_refinement():
    coarse = contour_b2(figure_preset("fig4", count=11))
    fine = contour_b2(figure_preset("fig4", count=41))

    def eps_at_eta_one(res):
        return [e for e, eta in res.points if eta == 1.0]

    # grid lines at eta = 1 are shared, so the refined crossing must match
    a, b = eps_at_eta_one(coarse), eps_at_eta_one(fine)
    assert len(a) == len(b) == 1
    assert a[0] == pytest.approx(b[0], abs=1e-5)


# --- presets --------------------------------------------------------------

@pytest.mark.parametrize("fig_id", FIGURES)
def test_presets_evaluate(fig_id):
    spec = figure_preset(fig_id, count=9)
    rows = grid_sweep(spec)
    expected = spec.axis1.count * spec.axis2.count
    assert len(rows) == expected
    assert all(math.isfinite(r["b_value"]) for r in rows)
    assert any(r["violates"] for r in rows)


def test_preset_fixed_parameters():
    assert figure_preset("fig1").axis2.points == (15.0, 30.0, 35.0)
    assert figure_preset("fig7").base.delta_omega_frac == pytest.approx(0.2, rel=1e-15)
    assert figure_preset("fig4").base.temperature == pytest.approx(0.020, rel=1e-15)
    assert (figure_preset("fig7").axis1.min, figure_preset("fig7").axis1.max) == (10.0, 35.0)
    assert figure_preset("fig2").axis1.count == 201


def test_unknown_preset():
    with pytest.raises(ConfigError):
        figure_preset("fig8")

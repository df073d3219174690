import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import HALF, OMEGA_D, make_params
from dce_bell.circuit import (
    WARN_PERTURBATIVE,
    derive_mode_pair,
    driving_parameter,
    effective_mirror_velocity,
    is_perturbative,
    mode_frequencies,
    thermal_occupation,
)
from dce_bell.errors import DomainError

# 40-digit mpmath evaluation of 1/(exp(hbar w/kT) - 1), w = 10 pi GHz
N_15MK = 1.1281948328956374e-07
N_35MK = 1.0541632853930637e-03


def test_mode_frequencies_resonant():
    wp, wm = mode_frequencies(make_params(delta_omega_frac=0.0))
    assert wp == wm == HALF


def test_mode_frequencies_detuned():
    wp, wm = mode_frequencies(make_params(delta_omega_frac=0.2))
    assert wp == pytest.approx(0.7 * OMEGA_D, rel=1e-15)
    assert wm == pytest.approx(0.3 * OMEGA_D, rel=1e-15)


def test_mode_frequency_boundary_rejected():
    with pytest.raises(DomainError):
        make_params(delta_omega_frac=0.5)
    with pytest.raises(DomainError):
        make_params(delta_omega_frac=-0.5)


@pytest.mark.parametrize("field, value", [
    ("omega_d", 0.0), ("v", 0.0), ("l0_eff", -1e-3), ("temperature", -0.01),
    ("epsilon", -0.1), ("epsilon", float("nan")), ("v", float("inf")),
])
def test_invalid_params(field, value):
    with pytest.raises(DomainError):
        make_params(**{field: value})


def test_thermal_occupation_zero_temperature():
    assert thermal_occupation(HALF, 0.0) == 0.0


@pytest.mark.parametrize("temperature, expected", [(0.015, N_15MK), (0.035, N_35MK)])
def test_thermal_occupation_values(temperature, expected):
    assert thermal_occupation(HALF, temperature) == pytest.approx(expected, rel=1e-12)


def test_thermal_occupation_no_overflow():
    assert thermal_occupation(1e15, 1e-6) == 0.0


def test_thermal_occupation_domain():
    with pytest.raises(DomainError):
        thermal_occupation(0.0, 0.01)
    with pytest.raises(DomainError):
        thermal_occupation(1e9, -0.01)


def test_thermal_occupation_monotone():
    temps = np.linspace(0.005, 0.1, 60)
    omegas = np.linspace(1e9, 1e11, 60)
    for w in omegas[::7]:
        occ = [thermal_occupation(w, t) for t in temps]
        assert np.all(np.diff(occ) > 0)
    for t in temps[::7]:
        occ = [thermal_occupation(w, t) for w in omegas]
        assert np.all(np.diff(occ) < 0)


def test_driving_parameter_reference_value():
    assert driving_parameter(make_params()) == pytest.approx(0.0786, abs=2e-4)
    # exact value: 0.6 * 5e-4 * 10 pi e9 / 1.2e8 = pi / 40
    assert driving_parameter(make_params()) == pytest.approx(math.pi / 40, rel=1e-14)


def test_driving_parameter_zero_and_half_drive():
    assert driving_parameter(make_params(epsilon=0.0)) == 0.0
    assert driving_parameter(make_params(epsilon=0.3)) == pytest.approx(math.pi / 80, rel=1e-14)


@given(st.floats(0.0, 1.0), st.floats(1e-5, 1e-2), st.floats(1e7, 3e8), st.floats(0.0, 0.45),
       st.floats(0.1, 4.0))
def test_driving_parameter_scaling(eps, l0, v, frac, c):
    p = make_params(epsilon=eps, l0_eff=l0, v=v, delta_omega_frac=frac)
    f = driving_parameter(p)
    assert driving_parameter(dataclasses.replace(p, epsilon=c * eps)) == pytest.approx(c * f, rel=1e-13, abs=1e-300)
    assert driving_parameter(dataclasses.replace(p, l0_eff=c * l0)) == pytest.approx(c * f, rel=1e-13, abs=1e-300)
    assert driving_parameter(dataclasses.replace(p, v=v / 2)) == pytest.approx(2 * f, rel=1e-13, abs=1e-300)


def test_perturbative_flag():
    assert is_perturbative(make_params())
    assert not is_perturbative(make_params(epsilon=2.0))  # epsilon > 1
    strong = make_params(epsilon=0.9, l0_eff=5e-3)  # f ~ 1.2
    assert not is_perturbative(strong)
    assert WARN_PERTURBATIVE in derive_mode_pair(strong).warnings
    assert derive_mode_pair(make_params()).warnings == frozenset()


def test_effective_mirror_velocity():
    p = make_params()
    assert effective_mirror_velocity(p) == pytest.approx(3.1415926535897932e7, rel=1e-15)
    assert effective_mirror_velocity(dataclasses.replace(p, l0_eff=1e-3)) == pytest.approx(
        2 * effective_mirror_velocity(p), rel=1e-15)
    assert effective_mirror_velocity(p, with_amplitude=True) == pytest.approx(
        0.6 * effective_mirror_velocity(p), rel=1e-15)


def test_derive_mode_pair_baseline():
    pair = derive_mode_pair(make_params())
    assert pair.omega_plus == pair.omega_minus == HALF
    assert pair.n_plus == pytest.approx(N_15MK, rel=1e-12)
    assert pair.f == pytest.approx(0.0786, abs=2e-4)


def test_derive_mode_pair_trivial():
    pair = derive_mode_pair(make_params(epsilon=0.0, temperature=0.0))
    assert (pair.n_plus, pair.n_minus, pair.f) == (0.0, 0.0, 0.0)


def test_detuned_occupations_ordered():
    pair = derive_mode_pair(make_params(delta_omega_frac=0.2, temperature=0.020))
    assert pair.n_minus > pair.n_plus


@given(st.floats(-0.49, 0.49), st.floats(0.0, 0.2), st.floats(0.0, 2.0))
def test_mode_pair_invariants(frac, temp, eps):
    p = make_params(delta_omega_frac=frac, temperature=temp, epsilon=eps)
    pair = derive_mode_pair(p)
    assert pair.omega_plus + pair.omega_minus == pytest.approx(p.omega_d, rel=1e-15)
    values = (pair.omega_plus, pair.omega_minus, pair.n_plus, pair.n_minus, pair.f)
    assert all(math.isfinite(v) for v in values)
    assert pair.n_plus >= 0 and pair.n_minus >= 0 and pair.f >= 0
    if frac >= 0:
        assert pair.n_plus <= pair.n_minus


@given(st.floats(0.0, 0.49))
def test_detuning_sign_swaps_modes(frac):
    wp, wm = mode_frequencies(make_params(delta_omega_frac=frac))
    wp2, wm2 = mode_frequencies(make_params(delta_omega_frac=-frac))
    assert (wp, wm) == (wm2, wp2)

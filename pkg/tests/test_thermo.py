"""
Tests de ocupaciones térmicas y del ciclo de Otto ideal
"""

import math

import numpy as np
import pytest

from app.core.errors import DivergentOccupationError, NotAnEngineError, RegimeError
from app.core.units import lambda_parameters
from app.models.cycle import BathSpec, OttoCycleSpec
from app.models.polariton import CouplingMatrix
from app.processors.otto_algebra import bose_factor, cycle_from_endpoints
from app.services.thermo_service import ThermoService

GAMMA0 = 2 * math.pi * 1e3


@pytest.fixture
def thermo(services):
    return services.thermo_service


def test_bose_occupation_reference_value():
    assert ThermoService.bose_occupation(0.712, 100e-9, GAMMA0) == pytest.approx(2.455, rel=1e-3)


def test_bose_occupation_limits():
    assert bose_factor(5.0, 0.0) == 0.0
    assert bose_factor(1e4, 1e-3) == 0.0
    with pytest.raises(DivergentOccupationError):
        bose_factor(0.0, 1.0)


def test_branch_occupations_conserve_total(thermo, high_oam_params):
    spectrum = thermo.spectrum_service.polariton_spectrum(
        CouplingMatrix(detuning=120.0, omega_c=high_oam_params.omega_c, omega_d=high_oam_params.omega_d, coupling=high_oam_params.coupling)
    )
    bare = np.array([0.3, 1.7, 2.2])
    assert thermo.branch_occupations(spectrum, bare).sum() == pytest.approx(bare.sum(), rel=1e-12)


def test_ideal_cycle_reference_engine(thermo, engine_spec):
    result = thermo.ideal_otto(engine_spec)
    assert result.omega_i == pytest.approx(126.55, rel=1e-2)
    assert result.omega_f == pytest.approx(1.78, rel=1e-2)
    assert result.efficiency == pytest.approx(0.986, abs=1e-2)
    assert result.work > 0
    assert result.n_f == 0.0
    assert result.heat_in + result.heat_out == pytest.approx(result.work, rel=1e-12)


def test_efficiency_matches_frequency_ratio_on_random_draws(thermo, high_oam_params):
    rng = np.random.default_rng(11)
    omega_c, omega_d = high_oam_params.omega_c, high_oam_params.omega_d
    accepted = 0
    while accepted < 50:
        detuning_i = rng.uniform(3.0, 20.0) * omega_c
        detuning_f = rng.uniform(0.1, 10.0)
        coupling = rng.uniform(0.5, 8.0)
        temperature = rng.uniform(50e-9, 500e-9)
        lowest = thermo.spectrum_service.lower_branch_frequency
        if min(lowest(detuning_i, omega_c, omega_d, coupling), lowest(detuning_f, omega_c, omega_d, coupling)) <= 0:
            continue
        spec = OttoCycleSpec(
            detuning_i=detuning_i, detuning_f=detuning_f,
            omega_c=omega_c, omega_d=omega_d, coupling=coupling,
            baths=BathSpec(t_phonon=temperature, gamma_m=0.01),
        )
        result = thermo.ideal_otto(spec)
        assert result.work / result.heat_in == pytest.approx(1.0 - result.omega_f / result.omega_i, abs=1e-12)
        accepted += 1


def test_efficiency_independent_of_phonon_temperature(thermo, engine_spec):
    etas = []
    for temperature in (20e-9, 100e-9, 1e-6):
        spec = engine_spec.model_copy(update={"baths": engine_spec.baths.model_copy(update={"t_phonon": temperature})})
        etas.append(thermo.ideal_otto(spec).efficiency)
    assert max(etas) - min(etas) <= 1e-12


def test_cavity_occupation_enters_only_hot_endpoint(thermo, engine_spec):
    with_photons = engine_spec.model_copy(update={"baths": engine_spec.baths.model_copy(update={"n_a": 0.3})})
    _, _, n_i_bare, _ = thermo.endpoints(engine_spec)
    _, _, n_i, n_f = thermo.endpoints(with_photons)
    hot = thermo.spectrum_service.polariton_spectrum(engine_spec.matrix(engine_spec.detuning_i))
    assert n_f == 0.0
    assert n_i == pytest.approx(n_i_bare + hot.weights("A")[0] ** 2 * 0.3, rel=1e-12)


def test_not_an_engine_without_thermal_contrast(thermo, engine_spec):
    cold = engine_spec.model_copy(update={"baths": engine_spec.baths.model_copy(update={"t_phonon": 0.0})})
    with pytest.raises(NotAnEngineError) as info:
        thermo.ideal_otto(cold)
    assert info.value.result is not None
    assert info.value.result.work == 0.0


def test_cycle_spec_requires_ordered_detunings(high_oam_params):
    with pytest.raises(ValueError):
        OttoCycleSpec(detuning_i=1.0, detuning_f=2.0, omega_c=high_oam_params.omega_c, omega_d=high_oam_params.omega_d, coupling=4.0)


def test_equal_detunings_give_zero_work():
    result = cycle_from_endpoints(10.0, 10.0, 2.0, 0.0)
    assert result.work == 0.0
    assert result.efficiency == 0.0


def test_asymptotic_efficiency_agrees_with_exact(thermo, engine_spec):
    exact = thermo.ideal_otto(engine_spec).efficiency
    assert thermo.asymptotic_efficiency(engine_spec) == pytest.approx(exact, abs=1e-2)


def test_asymptotic_efficiency_regime_guard(thermo, engine_spec):
    outside = engine_spec.model_copy(update={"detuning_f": 50.0})
    with pytest.raises(RegimeError):
        thermo.asymptotic_efficiency(outside)


def test_efficiency_increases_with_oam(thermo, sodium_ring):
    etas = []
    for oam in range(100, 201, 20):
        physical = sodium_ring.model_copy(update={"oam": oam})
        omega_c, omega_d, coupling = lambda_parameters(physical)
        spec = OttoCycleSpec(
            detuning_i=10 * omega_c, detuning_f=2.0,
            omega_c=omega_c, omega_d=omega_d, coupling=coupling,
            baths=BathSpec.from_physical(physical),
        )
        etas.append(thermo.ideal_otto(spec).efficiency)
    assert np.all(np.diff(etas) > 0)


def test_upper_branch_diagnostic_does_not_raise(thermo, engine_spec):
    result = thermo.branch_diagnostic(engine_spec, "B")
    assert result.omega_i > engine_spec.detuning_i
    assert result.omega_f > engine_spec.omega_c

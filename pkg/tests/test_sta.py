"""
Tests de atajos a la adiabaticidad: ansätze de ρ, factibilidad, inversión de detuning y Q*
"""

import logging

import numpy as np
import pytest

from app.core.errors import DomainError, InfeasibleProtocolError, UnattainableFrequencyError
from app.processors.rho_ansatz import ANSATZE

ANSATZ_NAMES = sorted(ANSATZE)


@pytest.fixture
def sta(services):
    return services.sta_service


@pytest.fixture
def reference_stroke(services, high_oam_params):
    """Ω_i = ω_A(10ω_c), Ω_f = ω_A(2γ0)"""
    lower = services.spectrum_service.lower_branch_frequency
    return (
        lower(10 * high_oam_params.omega_c, high_oam_params.omega_c, high_oam_params.omega_d, high_oam_params.coupling),
        lower(2.0, high_oam_params.omega_c, high_oam_params.omega_d, high_oam_params.coupling),
    )


@pytest.mark.parametrize("ansatz", ANSATZ_NAMES)
def test_boundary_conditions(sta, ansatz):
    tau, omega_i, omega_f = 3.0, 5.0, 0.8
    rho, rho_dot, rho_ddot = sta.rho(ansatz, np.array([0.0, tau]), tau, omega_i, omega_f)
    assert rho[0] == pytest.approx(1.0, abs=1e-8)
    assert rho[1] == pytest.approx(np.sqrt(omega_i / omega_f), abs=1e-8)
    assert np.allclose(rho_dot, 0.0, atol=1e-8)
    assert np.allclose(rho_ddot, 0.0, atol=1e-8)


@pytest.mark.parametrize("ansatz", ANSATZ_NAMES)
def test_protocol_endpoints_and_residual(sta, ansatz):
    protocol = sta.omega_protocol(ansatz, 5.0, 4.0, 1.0, n_samples=1000)
    assert protocol.feasible
    assert protocol.omega[0] == pytest.approx(4.0, rel=1e-12)
    assert protocol.omega[-1] == pytest.approx(1.0, rel=1e-12)
    assert np.max(np.abs(protocol.ermakov_pinney_residual())) < 1e-8


def test_ansatze_coincide_at_start_middle_and_end(sta):
    tau = 4.0
    t = np.array([0.0, tau / 2, tau])
    poly, _, _ = sta.rho("polynomial", t, tau, 9.0, 1.0)
    trig, _, _ = sta.rho("trigonometric", t, tau, 9.0, 1.0)
    assert np.allclose(poly, trig, rtol=0.0, atol=1e-14)

    dense = np.linspace(0.0, tau, 401)
    poly, _, _ = sta.rho("polynomial", dense, tau, 9.0, 1.0)
    trig, _, _ = sta.rho("trigonometric", dense, tau, 9.0, 1.0)
    assert np.max(np.abs(poly - trig)) > 1e-3


def test_rho_domain_errors(sta):
    with pytest.raises(DomainError):
        sta.rho("polynomial", 0.0, 0.0, 1.0, 2.0)
    with pytest.raises(DomainError):
        sta.rho("polynomial", 2.0, 1.0, 1.0, 2.0)
    with pytest.raises(DomainError):
        sta.rho("gaussian", 0.5, 1.0, 1.0, 2.0)


def test_reference_stroke_is_feasible_at_tau_10(sta, reference_stroke):
    omega_i, omega_f = reference_stroke
    protocol = sta.omega_protocol("polynomial", 10.0, omega_i, omega_f, n_samples=10_000)
    assert protocol.feasible
    assert sta.feasibility_threshold("polynomial", omega_i, omega_f) < 10.0


@pytest.mark.parametrize("ansatz", ANSATZ_NAMES)
def test_feasibility_threshold_brackets(sta, ansatz):
    omega_i, omega_f = 126.55, 1.78
    tau_star = sta.feasibility_threshold(ansatz, omega_i, omega_f)
    assert tau_star > 0
    assert sta.omega_protocol(ansatz, 1.01 * tau_star, omega_i, omega_f, n_samples=10_001).feasible
    with pytest.raises(InfeasibleProtocolError) as info:
        sta.omega_protocol(ansatz, 0.99 * tau_star, omega_i, omega_f, n_samples=10_001)
    assert info.value.minimum <= 0
    assert 0 <= info.value.location <= 0.99 * tau_star


def test_non_strict_protocol_reports_infeasible(sta):
    protocol = sta.omega_protocol("polynomial", 0.05, 126.55, 1.78, strict=False)
    assert not protocol.feasible
    assert protocol.min_omega_squared <= 0
    with pytest.raises(InfeasibleProtocolError):
        sta.detuning_protocol(protocol, 173.27, 126.56, 4.0)


def test_compression_is_time_reversed_expansion(sta):
    expansion = sta.omega_protocol("trigonometric", 5.0, 4.0, 1.0, n_samples=501)
    compression = sta.compression_protocol(expansion)
    assert compression.reversed
    assert compression.omega_i == 1.0 and compression.omega_f == 4.0
    assert np.array_equal(compression.omega_squared, expansion.omega_squared[::-1])
    assert compression.rho[0] == pytest.approx(1.0)
    assert compression.rho[-1] == pytest.approx(np.sqrt(1.0 / 4.0))
    assert np.max(np.abs(compression.ermakov_pinney_residual())) < 1e-8
    assert sta.compression_protocol(compression).reversed is False


@pytest.mark.parametrize("ansatz", ANSATZ_NAMES)
def test_sta_protocol_is_adiabatic(sta, ansatz):
    protocol = sta.omega_protocol(ansatz, 5.0, 4.0, 1.0, n_samples=1000)
    assert sta.protocol_adiabaticity(protocol) == pytest.approx(1.0, abs=1e-6)
    assert sta.protocol_adiabaticity(sta.compression_protocol(protocol)) == pytest.approx(1.0, abs=1e-6)


def test_reference_stroke_sta_is_adiabatic(sta, reference_stroke):
    omega_i, omega_f = reference_stroke
    protocol = sta.omega_protocol("polynomial", 10.0, omega_i, omega_f, n_samples=2001)
    assert sta.protocol_adiabaticity(protocol) == pytest.approx(1.0, abs=1e-6)


def test_linear_ramp_is_not_adiabatic(sta, reference_stroke):
    omega_i, omega_f = reference_stroke
    times, omega = sta.linear_ramp(0.1, omega_i, omega_f, n_samples=4001)
    assert sta.adiabaticity_parameter(times, omega) - 1.0 > 1e-3


def test_constant_frequency_has_unit_q_star(sta):
    times = np.linspace(0.0, 10.0, 2001)
    assert sta.adiabaticity_parameter(times, np.full_like(times, 3.0)) == pytest.approx(1.0, abs=1e-8)


def test_wronskian_conserved(sta):
    protocol = sta.omega_protocol("polynomial", 5.0, 4.0, 1.0, n_samples=500)
    solutions = sta.fundamental_solutions(protocol.times, omega=protocol.omega)
    assert np.allclose(solutions.wronskian, 1.0, atol=1e-8)


def test_undersampled_frequency_warns(sta, caplog):
    times = np.linspace(0.0, 10.0, 11)
    with caplog.at_level(logging.WARNING, logger="app.services.sta_service"):
        sta.fundamental_solutions(times, omega=np.full_like(times, 4.0))
    assert any("Muestreo insuficiente" in record.message for record in caplog.records)


@pytest.mark.parametrize("ansatz", ANSATZ_NAMES)
def test_ermakov_lewis_invariant_conserved(sta, ansatz):
    protocol = sta.omega_protocol(ansatz, 5.0, 4.0, 1.0, n_samples=1000)
    invariant = sta.ermakov_lewis_invariant(protocol, x0=0.7, v0=-1.3)
    assert np.max(np.abs(invariant / invariant[0] - 1.0)) < 1e-6


def test_mean_energy_endpoints(sta):
    protocol = sta.omega_protocol("polynomial", 5.0, 4.0, 1.0, n_samples=500)
    energy = sta.mean_energy(protocol, occupation=2.0)
    assert energy.initial == pytest.approx(2.5 * 4.0, rel=1e-12)
    assert energy.final == pytest.approx(2.5 * 1.0, rel=1e-12)


def test_detuning_protocol_recovers_endpoints(sta, services, high_oam_params):
    lower = services.spectrum_service.lower_branch_frequency
    omega_i = lower(250.0, high_oam_params.omega_c, high_oam_params.omega_d, high_oam_params.coupling)
    omega_f = lower(2.0, high_oam_params.omega_c, high_oam_params.omega_d, high_oam_params.coupling)
    protocol = sta.omega_protocol("polynomial", 10.0, omega_i, omega_f, n_samples=201)
    inverted = sta.detuning_protocol(protocol, high_oam_params.omega_c, high_oam_params.omega_d, high_oam_params.coupling)

    assert inverted.detuning[0] == pytest.approx(250.0, rel=1e-6)
    assert inverted.detuning[-1] == pytest.approx(2.0, rel=1e-6)
    residual = [abs(lower(x, high_oam_params.omega_c, high_oam_params.omega_d, high_oam_params.coupling) - w)
                for x, w in zip(inverted.detuning, inverted.omega)]
    assert max(residual) < 1e-9

    d_omega = np.diff(inverted.omega)
    moving = np.abs(d_omega) > 1e-9
    assert np.array_equal(np.sign(np.diff(inverted.detuning))[moving], np.sign(d_omega)[moving])
    assert "detuning" in inverted.to_frame().columns


def test_unattainable_frequency(sta, high_oam_params):
    protocol = sta.omega_protocol("polynomial", 10.0, 2 * high_oam_params.omega_d, high_oam_params.omega_d, n_samples=51)
    with pytest.raises(UnattainableFrequencyError):
        sta.detuning_protocol(protocol, high_oam_params.omega_c, high_oam_params.omega_d, high_oam_params.coupling)


def test_two_mode_detuning_protocol(sta, services, low_oam_params):
    two_mode = services.two_mode_service

    def lower(detuning):
        params = two_mode.eliminate_c(detuning, low_oam_params.omega_c, low_oam_params.omega_d, low_oam_params.coupling, 0.25)
        return two_mode.two_mode_frequencies(params)[0]

    protocol = sta.omega_protocol("trigonometric", 20.0, lower(1.8), lower(0.3), n_samples=101)
    inverted = sta.detuning_protocol(
        protocol, low_oam_params.omega_c, low_oam_params.omega_d, low_oam_params.coupling, dispersion="two_mode", validity_fraction=0.25
    )
    assert inverted.detuning[0] == pytest.approx(1.8, rel=1e-8)
    assert inverted.detuning[-1] == pytest.approx(0.3, rel=1e-8)

"""
Tests del espectro polaritónico: Cardano vs Jacobi, Hopfield y asintóticas
"""

import numpy as np
import pytest

from app.core.errors import ComplexRootError, DegenerateSpectrumError, RegimeError, SingularWeightError
from app.core.units import sidemode_frequencies
from app.models.physical import PhysicalConfig
from app.models.polariton import CouplingMatrix
from app.processors.cubic_solver import cardano_roots, characteristic_coefficients
from app.processors.jacobi import jacobi_eigh


@pytest.fixture
def spectrum_service(services):
    return services.spectrum_service


def _matrix(params, detuning):
    return CouplingMatrix(detuning=detuning, omega_c=params.omega_c, omega_d=params.omega_d, coupling=params.coupling)


def test_jacobi_matches_numpy():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(4, 4))
    a = a + a.T
    w, v = jacobi_eigh(a)
    assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-12)
    assert np.allclose(a @ v, v * w, atol=1e-11)


def test_jacobi_rejects_non_symmetric():
    with pytest.raises(ValueError):
        jacobi_eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_cardano_matches_jacobi_at_150(spectrum_service, high_oam_params):
    matrix = _matrix(high_oam_params, 150.0)
    roots = spectrum_service.polariton_spectrum(matrix).frequencies
    reference, _ = jacobi_eigh(matrix.as_array())
    assert np.allclose(roots, reference, rtol=0.0, atol=1e-9)


def test_cardano_matches_jacobi_random_draws(spectrum_service):
    rng = np.random.default_rng(20231115)
    for _ in range(1000):
        detuning = rng.uniform(0.1, 1e3)
        omega_c = rng.uniform(1.0, 200.0)
        omega_d = rng.uniform(0.1, omega_c)
        coupling = rng.uniform(0.0, 10.0)
        roots = spectrum_service._roots(detuning, omega_c, omega_d, coupling)
        matrix = CouplingMatrix(detuning=detuning, omega_c=omega_c, omega_d=omega_d, coupling=coupling)
        reference, _ = jacobi_eigh(matrix.as_array())
        assert np.allclose(roots, reference, rtol=0.0, atol=1e-9)

        # Vieta
        c1, c2, c3 = characteristic_coefficients(detuning, omega_c, omega_d, coupling)
        r = np.array(roots)
        scale = max(1.0, abs(c1))
        assert abs(r.sum() + c1) <= 1e-10 * scale
        assert r[0] * r[1] * r[2] == pytest.approx(-c3, rel=1e-10, abs=1e-10 * scale ** 3)


def test_cardano_triple_root():
    # (λ − 2)³ = λ³ − 6λ² + 12λ − 8
    assert cardano_roots(-6.0, 12.0, -8.0) == pytest.approx((2.0, 2.0, 2.0))


def test_cardano_complex_roots_rejected():
    # λ³ + λ + 1 tiene un par complejo
    with pytest.raises(ComplexRootError):
        cardano_roots(0.0, 1.0, 1.0)


def test_branches_ordered_and_bounded(spectrum_service, high_oam_params):
    frame = spectrum_service.detuning_sweep(np.linspace(0.1, 250.0, 501), high_oam_params.omega_c, high_oam_params.omega_d, high_oam_params.coupling)
    omega_a = frame["omega_A"].to_numpy()
    assert np.all(frame["omega_A"] <= frame["omega_C"])
    assert np.all(frame["omega_C"] <= frame["omega_B"])
    assert np.all(np.diff(omega_a) >= 0)
    bound = high_oam_params.omega_d + high_oam_params.coupling ** 2 / (frame["detuning"] + high_oam_params.omega_d)
    assert np.all(omega_a <= bound)


def test_bare_lines_when_uncoupled(spectrum_service, high_oam_params):
    frame = spectrum_service.detuning_sweep([50.0, 150.0, 300.0], high_oam_params.omega_c, high_oam_params.omega_d, 0.0)
    for _, row in frame.iterrows():
        expected = sorted([row["bare_a"], row["bare_c"], row["bare_d"]])
        assert [row["omega_A"], row["omega_C"], row["omega_B"]] == pytest.approx(expected)


def test_hopfield_orthonormal(spectrum_service, high_oam_params):
    for detuning in (2.0, 150.0, 10 * high_oam_params.omega_c):
        spectrum = spectrum_service.polariton_spectrum(_matrix(high_oam_params, detuning))
        h = spectrum.hopfield
        assert np.allclose(h.T @ h, np.eye(3), atol=1e-10)
        assert np.all(h[0] > 0)


@pytest.mark.parametrize("oam, ratio", [(12, 121.0), (15, 25.0)])
def test_sidemode_frequency_ratio(oam, ratio):
    derived = sidemode_frequencies(PhysicalConfig(oam=oam))
    assert derived.omega_c / derived.omega_d == pytest.approx(ratio, rel=1e-12)


def test_branch_slope_equals_photon_weight(spectrum_service, high_oam_params, low_oam_params):
    step = 1e-5
    cases = [(high_oam_params, d) for d in (2.0, 150.0, 10 * high_oam_params.omega_c)] + [(low_oam_params, 0.5)]
    for params, detuning in cases:
        spectrum = spectrum_service.polariton_spectrum(_matrix(params, detuning))
        above = spectrum_service.polariton_spectrum(_matrix(params, detuning + step)).frequencies
        below = spectrum_service.polariton_spectrum(_matrix(params, detuning - step)).frequencies
        # ∂ω_j/∂Δ̄ = −|X_a,j|² con −Δ̄ como variable de control
        slope = -(above - below) / (2 * step)
        assert np.allclose(slope, -spectrum.hopfield[0] ** 2, atol=1e-6)


def test_eigenvectors_diagonalize_lambda(spectrum_service, high_oam_params):
    matrix = _matrix(high_oam_params, 150.0)
    spectrum = spectrum_service.polariton_spectrum(matrix)
    vectors = spectrum.eigenvectors()
    assert np.allclose(matrix.as_array() @ vectors, vectors * spectrum.frequencies, atol=1e-8)


def test_branch_a_photonlike_at_small_detuning(spectrum_service, high_oam_params):
    spectrum = spectrum_service.polariton_spectrum(_matrix(high_oam_params, 2.0))
    weights = spectrum.weights("A")
    assert weights[0] ** 2 > 0.99
    expected = np.array([1.0, high_oam_params.coupling / (high_oam_params.omega_c - 2.0), high_oam_params.coupling / (high_oam_params.omega_d - 2.0)])
    expected /= np.linalg.norm(expected)
    assert np.allclose(weights, expected, rtol=1e-2)


def test_branch_a_phononlike_at_large_detuning(spectrum_service, high_oam_params):
    detuning = 10 * high_oam_params.omega_c
    spectrum = spectrum_service.polariton_spectrum(_matrix(high_oam_params, detuning))
    weights = spectrum.weights("A")
    assert weights[2] ** 2 > 0.99
    assert abs(weights[1]) < 1e-3
    assert weights[0] == pytest.approx(high_oam_params.coupling / (detuning - high_oam_params.omega_d), rel=1e-2)


def test_hopfield_singular_weight(spectrum_service, high_oam_params):
    with pytest.raises(SingularWeightError):
        spectrum_service.hopfield_weights(high_oam_params.omega_c, _matrix(high_oam_params, 150.0))


def test_degenerate_spectrum_detected(spectrum_service):
    # tres modos desnudos iguales: las ramas quedan a distancia ~G̃, bajo la tolerancia
    matrix = CouplingMatrix(detuning=10.0, omega_c=10.0, omega_d=10.0, coupling=0.0)
    spectrum = spectrum_service.polariton_spectrum(matrix)
    assert spectrum.frequencies == pytest.approx([10.0, 10.0, 10.0])
    with pytest.raises(DegenerateSpectrumError):
        spectrum_service.polariton_spectrum(matrix.model_copy(update={"coupling": 1e-12}))


def test_lower_branch_fast_path(spectrum_service, high_oam_params):
    for detuning in (1.0, 80.0, 400.0):
        spectrum = spectrum_service.polariton_spectrum(_matrix(high_oam_params, detuning))
        fast = spectrum_service.lower_branch_frequency(detuning, high_oam_params.omega_c, high_oam_params.omega_d, high_oam_params.coupling)
        assert fast == spectrum.omega_A


def test_asymptotic_frequencies_small_detuning(spectrum_service, high_oam_params):
    matrix = _matrix(high_oam_params, 2.0)
    approx = spectrum_service.asymptotic_frequencies("small-detuning", matrix)
    exact = spectrum_service.polariton_spectrum(matrix)
    bound = 5 * high_oam_params.coupling ** 3 / min(high_oam_params.omega_c, high_oam_params.omega_d) ** 2
    assert abs(approx.A - exact.omega_A) <= bound
    assert abs(approx.C - exact.omega_C) <= bound
    assert abs(approx.B - exact.omega_B) <= bound


def test_asymptotic_frequencies_large_detuning(spectrum_service, high_oam_params):
    matrix = _matrix(high_oam_params, 10 * high_oam_params.omega_c)
    approx = spectrum_service.asymptotic_frequencies("large-detuning", matrix)
    exact = spectrum_service.polariton_spectrum(matrix)
    bound = 5 * high_oam_params.coupling ** 3 / min(high_oam_params.omega_c, high_oam_params.omega_d) ** 2
    assert abs(approx.A - exact.omega_A) <= bound
    assert abs(approx.B - exact.omega_B) <= bound


def test_asymptotic_regime_guard(spectrum_service, high_oam_params):
    with pytest.raises(RegimeError):
        spectrum_service.asymptotic_frequencies("small-detuning", _matrix(high_oam_params, 150.0))
    with pytest.raises(RegimeError):
        spectrum_service.asymptotic_mixing("large-detuning", _matrix(high_oam_params, 150.0))


def test_asymptotic_mixing_small_detuning(spectrum_service, high_oam_params):
    matrix = _matrix(high_oam_params, 2.0)
    mixing = spectrum_service.asymptotic_mixing("small-detuning", matrix)
    approx = mixing[:, 0] / np.linalg.norm(mixing[:, 0])
    exact = spectrum_service.polariton_spectrum(matrix).weights("A")
    assert np.allclose(approx, exact, rtol=1e-2)


def test_asymptotic_mixing_large_detuning_has_no_c_component(spectrum_service, high_oam_params):
    mixing = spectrum_service.asymptotic_mixing("large-detuning", _matrix(high_oam_params, 10 * high_oam_params.omega_c))
    assert mixing[1, 0] == 0.0
    assert mixing[2, 0] == 1.0

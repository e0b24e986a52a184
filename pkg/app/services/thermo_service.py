"""
Servicio termodinámico: ocupaciones térmicas y ciclo de Otto ideal sobre una rama polaritónica
"""

import logging
from typing import Tuple

import numpy as np

from app.core.config import Config
from app.core.errors import DivergentOccupationError, RegimeError
from app.core.units import thermal_ratio
from app.models.cycle import BathSpec, CycleResult, OttoCycleSpec
from app.models.polariton import BRANCH_ORDER, PolaritonSpectrum
from app.processors.otto_algebra import bose_factor, cycle_from_endpoints, require_engine
from app.services.spectrum_service import SpectrumService
from app.services.two_mode_service import TwoModeService

logger = logging.getLogger(__name__)


class ThermoService:
    """Servicio para ocupaciones de Bose/Hopfield y energética del ciclo de Otto"""

    def __init__(self, spectrum_service: SpectrumService = None, two_mode_service: TwoModeService = None,
                 config: Config = None):
        """
        Constructor con Dependency Injection estricta

        Args:
            spectrum_service: Servicio de espectro polaritónico
            two_mode_service: Servicio del modelo de dos modos (rama two_mode_lower)
            config: Configuración del sistema
        """
        if spectrum_service is None:
            raise ValueError("spectrum_service es requerido - use build_services() para crear instancias")
        if two_mode_service is None:
            raise ValueError("two_mode_service es requerido - use build_services() para crear instancias")
        if config is None:
            raise ValueError("config es requerido - use build_services() para crear instancias")
        self.spectrum_service = spectrum_service
        self.two_mode_service = two_mode_service
        self.config = config

    # ------------------------------------------------------------------
    # Ocupaciones
    # ------------------------------------------------------------------

    @staticmethod
    def bose_occupation(omega: float, temperature: float, photon_decay_si: float) -> float:
        """n(ω, T) con ω en γ0, T en kelvin y γ0 en rad/s"""
        return bose_factor(omega, thermal_ratio(temperature, photon_decay_si))

    def bare_occupations(self, matrix_omegas: Tuple[float, float], temperature: float, baths: BathSpec) -> np.ndarray:
        """(n_a, n_c, n_d) para los modos desnudos contra un baño a `temperature`"""
        omega_c, omega_d = matrix_omegas
        return np.array([
            baths.n_a,
            self.bose_occupation(omega_c, temperature, baths.photon_decay_si),
            self.bose_occupation(omega_d, temperature, baths.photon_decay_si),
        ])

    def polariton_occupation(self, spectrum: PolaritonSpectrum, bare_occupations: np.ndarray,
                             branch: str = "A") -> float:
        """⟨A†A⟩ = |X_a|²n_a + |X_c|²n_c + |X_d|²n_d con pesos normalizados"""
        if spectrum.frequency(branch) <= 0:
            raise DivergentOccupationError(
                f"La rama {branch} tiene frecuencia no positiva ({spectrum.frequency(branch):.6g}); "
                "no admite estado térmico",
            )
        weights = spectrum.weights(branch)
        return float(np.dot(weights ** 2, bare_occupations))

    def branch_occupations(self, spectrum: PolaritonSpectrum, bare_occupations: np.ndarray) -> np.ndarray:
        """Ocupaciones de las tres ramas (A, C, B); su suma reproduce n_a + n_c + n_d"""
        return np.array([self.polariton_occupation(spectrum, bare_occupations, b) for b in BRANCH_ORDER])

    # ------------------------------------------------------------------
    # Ciclo ideal
    # ------------------------------------------------------------------

    def _warn_regime(self, spec: OttoCycleSpec) -> None:
        high = max(spec.omega_c, spec.omega_d)
        low = min(spec.omega_c, spec.omega_d)
        if spec.detuning_i < self.config.engine_large_factor * high or spec.detuning_f > self.config.engine_small_fraction * low:
            logger.warning(
                f"[WARNING]  Fuera del régimen de motor (−Δ̄_i ≫ ω_{{c,d}}, −Δ̄_f ≪ ω_{{c,d}}): "
                f"−Δ̄_i={spec.detuning_i:.4g}, −Δ̄_f={spec.detuning_f:.4g}, ω_c={spec.omega_c:.4g}, ω_d={spec.omega_d:.4g}"
            )

    def endpoints(self, spec: OttoCycleSpec, branch: str = "A") -> Tuple[float, float, float, float]:
        """
        (Ω_i, Ω_f, n_i, n_f): el extremo i termaliza con el baño fonónico a T_phonon,
        el extremo f con el baño fotónico a T_photon.

        La ocupación n_a de `baths` solo entra en el extremo i; el reservorio
        fotónico frío del extremo f deja el modo de cavidad vacío.
        """
        if spec.branch == "two_mode_lower":
            return self.two_mode_service.endpoints(
                spec.detuning_i, spec.detuning_f, spec.omega_c, spec.omega_d, spec.coupling, spec.baths,
                spec.validity_fraction,
            )

        hot = self.spectrum_service.polariton_spectrum(spec.matrix(spec.detuning_i))
        cold = self.spectrum_service.polariton_spectrum(spec.matrix(spec.detuning_f))
        omegas = (spec.omega_c, spec.omega_d)
        n_hot = self.bare_occupations(omegas, spec.baths.t_phonon, spec.baths)
        n_cold = self.bare_occupations(omegas, spec.baths.t_photon, spec.baths)
        n_cold[0] = 0.0
        return (
            hot.frequency(branch),
            cold.frequency(branch),
            self.polariton_occupation(hot, n_hot, branch),
            self.polariton_occupation(cold, n_cold, branch),
        )

    def ideal_otto(self, spec: OttoCycleSpec) -> CycleResult:
        """Ciclo de Otto cuasiestático; NotAnEngineError si W ≤ 0"""
        if spec.branch == "A":
            self._warn_regime(spec)
        result = cycle_from_endpoints(*self.endpoints(spec))
        logger.debug(f"Ciclo ideal: W={result.work:.6g}, η={result.efficiency:.6g}")
        return require_engine(result)

    def branch_diagnostic(self, spec: OttoCycleSpec, branch: str = "B") -> CycleResult:
        """Mismas fórmulas evaluadas sobre otra rama, sin exigir W > 0"""
        if spec.branch != "A":
            raise ValueError("El diagnóstico por rama aplica solo al modelo de tres modos")
        return cycle_from_endpoints(*self.endpoints(spec, branch))

    def asymptotic_efficiency(self, spec: OttoCycleSpec) -> float:
        """η ≈ 1 + Δ̄_f/ω_d + (G̃²/ω_d)(1/ω_d + 1/ω_c), válida con −Δ̄_i > 5ω_c y −Δ̄_f < ω_d/10"""
        large = self.config.engine_large_factor * spec.omega_c
        small = self.config.engine_small_fraction * spec.omega_d
        if not spec.detuning_i > large:
            raise RegimeError(f"Eficiencia asintótica requiere −Δ̄_i > {large:.6g} (−Δ̄_i={spec.detuning_i:.6g})")
        if not spec.detuning_f < small:
            raise RegimeError(f"Eficiencia asintótica requiere −Δ̄_f < {small:.6g} (−Δ̄_f={spec.detuning_f:.6g})")
        g2 = spec.coupling ** 2
        return 1.0 - spec.detuning_f / spec.omega_d + (g2 / spec.omega_d) * (1.0 / spec.omega_d + 1.0 / spec.omega_c)

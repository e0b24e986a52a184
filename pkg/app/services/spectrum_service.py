"""
Servicio de espectro polaritónico: modos normales exactos y asintóticos del Hamiltoniano lineal
"""

import logging
from typing import Iterable, Literal, Optional, Tuple

import numpy as np
import pandas as pd

from app.core.config import Config
from app.core.errors import (
    ComplexRootError,
    DegenerateSpectrumError,
    RegimeError,
    SingularWeightError,
)
from app.models.polariton import BRANCH_ORDER, MODE_ORDER, BranchTriple, CouplingMatrix, PolaritonSpectrum
from app.processors.cubic_solver import (
    cardano_roots,
    characteristic_coefficients,
    polish_roots,
    secular_determinant,
)
from app.processors.jacobi import jacobi_eigh

logger = logging.getLogger(__name__)

Regime = Literal["small-detuning", "large-detuning"]


class SpectrumService:
    """Servicio para frecuencias de rama y coeficientes de Hopfield"""

    def __init__(self, config: Config = None):
        """
        Constructor con Dependency Injection estricta

        Args:
            config: Configuración del sistema (tolerancias)
        """
        if config is None:
            raise ValueError("config es requerido - use build_services() para crear instancias")
        self.config = config

    # ------------------------------------------------------------------
    # Polinomio característico
    # ------------------------------------------------------------------

    def characteristic_coefficients(self, matrix: CouplingMatrix) -> Tuple[float, float, float]:
        return characteristic_coefficients(matrix.detuning, matrix.omega_c, matrix.omega_d, matrix.coupling)

    def cardano_roots(self, c1: float, c2: float, c3: float) -> Tuple[float, float, float]:
        return cardano_roots(c1, c2, c3, clamp_tol=self.config.cardano_clamp_tol)

    def jacobi_eigh(self, matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return jacobi_eigh(matrix)

    def _roots(self, detuning: float, omega_c: float, omega_d: float, coupling: float) -> Tuple[float, float, float]:
        """Raíces pulidas sobre det(Λ − λ); Jacobi si Cardano no es confiable"""
        try:
            roots = self.cardano_roots(*characteristic_coefficients(detuning, omega_c, omega_d, coupling))
        except ComplexRootError as e:
            logger.warning(f"[WARNING]  Cardano no confiable ({e}) - usando Jacobi")
            matrix = CouplingMatrix(detuning=detuning, omega_c=omega_c, omega_d=omega_d, coupling=coupling)
            eigenvalues, _ = jacobi_eigh(matrix.as_array())
            roots = tuple(float(x) for x in eigenvalues)
        value, slope = secular_determinant(detuning, omega_c, omega_d, coupling)
        return polish_roots(roots, value, slope)

    def _branch_roots(self, matrix: CouplingMatrix) -> Tuple[float, float, float]:
        return self._roots(matrix.detuning, matrix.omega_c, matrix.omega_d, matrix.coupling)

    def lower_branch_frequency(self, detuning: float, omega_c: float, omega_d: float, coupling: float) -> float:
        """ω_A(−Δ̄) sin construir la matriz de Hopfield (camino rápido para la inversión)"""
        if coupling == 0.0:
            return min(detuning, omega_c, omega_d)
        return self._roots(detuning, omega_c, omega_d, coupling)[0]

    # ------------------------------------------------------------------
    # Espectro exacto
    # ------------------------------------------------------------------

    def hopfield_weights(self, omega: float, matrix: CouplingMatrix) -> np.ndarray:
        """
        (X_a, X_c, X_d) ∝ (1, G̃/(ω_c − ω_j), G̃/(ω_d − ω_j)), normalizado con X_a > 0
        """
        g = matrix.coupling
        if g == 0.0:
            raise SingularWeightError("Pesos de Hopfield indefinidos con G̃ = 0; use polariton_spectrum")
        tol = self.config.singular_weight_tol
        gap_c = matrix.omega_c - omega
        gap_d = matrix.omega_d - omega
        if abs(gap_c) < tol or abs(gap_d) < tol:
            raise SingularWeightError(
                f"ω_j = {omega:.15g} coincide con una frecuencia desnuda (ω_c={matrix.omega_c}, ω_d={matrix.omega_d})",
                omega=omega,
            )
        raw = np.array([1.0, g / gap_c, g / gap_d])
        return raw / np.linalg.norm(raw)

    def polariton_spectrum(self, matrix: CouplingMatrix) -> PolaritonSpectrum:
        """Ramas ordenadas A ≤ C ≤ B con su matriz de Hopfield (filas a, c, d)"""
        if matrix.coupling == 0.0:
            return self._uncoupled_spectrum(matrix)

        roots = self._branch_roots(matrix)
        gaps = np.diff(roots)
        if np.min(gaps) < self.config.degeneracy_tol:
            raise DegenerateSpectrumError(
                f"Ramas degeneradas (separación {np.min(gaps):.3g}) con G̃ > 0",
                roots=roots,
            )

        hopfield = np.empty((3, 3))
        normalizers = np.empty(3)
        for j, omega in enumerate(roots):
            hopfield[:, j] = self.hopfield_weights(omega, matrix)
            normalizers[j] = 1.0 / hopfield[0, j]

        return PolaritonSpectrum(
            matrix=matrix,
            frequencies=np.array(roots),
            hopfield=hopfield,
            normalizers=normalizers,
        )

    def _uncoupled_spectrum(self, matrix: CouplingMatrix) -> PolaritonSpectrum:
        bare = np.array([matrix.detuning, matrix.omega_c, matrix.omega_d])
        order = np.argsort(bare, kind="stable")
        hopfield = np.zeros((3, 3))
        for j, mode in enumerate(order):
            hopfield[mode, j] = 1.0
        return PolaritonSpectrum(
            matrix=matrix,
            frequencies=bare[order],
            hopfield=hopfield,
            normalizers=np.ones(3),
        )

    def detuning_sweep(self, detunings: Iterable[float], omega_c: float, omega_d: float,
                       coupling: float, include_bare: bool = True) -> pd.DataFrame:
        """Tabla de ramas y pesos sobre una grilla de −Δ̄ (curvas de frecuencias polaritónicas)"""
        rows = []
        base = CouplingMatrix(detuning=0.0, omega_c=omega_c, omega_d=omega_d, coupling=coupling)
        for detuning in detunings:
            spectrum = self.polariton_spectrum(base.with_detuning(float(detuning)))
            row = {"detuning": float(detuning)}
            for j, branch in enumerate(BRANCH_ORDER):
                row[f"omega_{branch}"] = float(spectrum.frequencies[j])
            for j, branch in enumerate(BRANCH_ORDER):
                for k, mode in enumerate(MODE_ORDER):
                    row[f"X_{mode}_{branch}"] = float(spectrum.hopfield[k, j])
            if include_bare:
                row["bare_a"] = float(detuning)
                row["bare_c"] = omega_c
                row["bare_d"] = omega_d
            rows.append(row)
        return pd.DataFrame(rows)

    # ------------------------------------------------------------------
    # Asintóticas de segundo orden en G̃
    # ------------------------------------------------------------------

    def _check_regime(self, regime: str, matrix: CouplingMatrix) -> None:
        factor = self.config.asymptotic_guard_factor
        low = min(matrix.omega_c, matrix.omega_d)
        high = max(matrix.omega_c, matrix.omega_d)
        if regime == "small-detuning":
            if not matrix.detuning < low / factor:
                raise RegimeError(
                    f"Régimen de detuning chico requiere −Δ̄ < {low / factor:.6g} (−Δ̄ = {matrix.detuning:.6g})"
                )
        elif regime == "large-detuning":
            if not matrix.detuning > factor * high:
                raise RegimeError(
                    f"Régimen de detuning grande requiere −Δ̄ > {factor * high:.6g} (−Δ̄ = {matrix.detuning:.6g})"
                )
        else:
            raise ValueError(f"Régimen desconocido: {regime}")

    @staticmethod
    def _perturbative_modes(matrix: CouplingMatrix) -> Tuple[np.ndarray, np.ndarray]:
        """Frecuencias y pesos de primer orden de los modos tipo fotón, tipo c y tipo d"""
        g = matrix.coupling
        delta_bar = matrix.delta_bar
        shift_c = g / (delta_bar + matrix.omega_c)
        shift_d = g / (delta_bar + matrix.omega_d)

        frequencies = np.array([
            -delta_bar - g * shift_c - g * shift_d,
            matrix.omega_c + g * shift_c,
            matrix.omega_d + g * shift_d,
        ])
        # columnas: fotón, c, d; filas: a, c, d
        mixing = np.array([
            [1.0, -shift_c, -shift_d],
            [shift_c, 1.0, 0.0],
            [shift_d, 0.0, 1.0],
        ])
        return frequencies, mixing

    def asymptotic_frequencies(self, regime: Regime, matrix: CouplingMatrix) -> BranchTriple:
        """(ω_A, ω_B, ω_C) a segundo orden en G̃; las etiquetas siguen el orden de las ramas exactas"""
        self._check_regime(regime, matrix)
        frequencies, _ = self._perturbative_modes(matrix)
        ordered = np.sort(frequencies, kind="stable")
        return BranchTriple(A=float(ordered[0]), B=float(ordered[2]), C=float(ordered[1]))

    def asymptotic_mixing(self, regime: Regime, matrix: CouplingMatrix) -> np.ndarray:
        """Pesos de primer orden sin normalizar; columnas en orden (A, C, B)"""
        self._check_regime(regime, matrix)
        frequencies, mixing = self._perturbative_modes(matrix)
        order = np.argsort(frequencies, kind="stable")
        return mixing[:, order]

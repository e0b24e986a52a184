"""
Servicio del motor de dos modos: eliminación adiabática del modo lateral rápido c

El Hamiltoniano efectivo conserva solo el término tipo beam-splitter entre a y d;
las correcciones de tipo Stokes (squeezing) quedan fuera del modelo y son una
fuente de error conocida.
"""

import logging
import math
from typing import Iterable, Literal, Tuple

import numpy as np
import pandas as pd

from app.core.config import Config
from app.core.errors import SingularWeightError, ValidityError
from app.core.units import thermal_ratio
from app.models.cycle import BathSpec, CycleResult
from app.models.two_mode import TwoModeParams
from app.processors.otto_algebra import bose_factor, cycle_from_endpoints, require_engine

logger = logging.getLogger(__name__)

TwoModeBranch = Literal["lower", "upper"]


class TwoModeService:
    """Servicio para frecuencias Ω_± y ciclo de Otto sobre la rama inferior"""

    def __init__(self, config: Config = None):
        if config is None:
            raise ValueError("config es requerido - use build_services() para crear instancias")
        self.config = config

    def eliminate_c(self, detuning: float, omega_c: float, omega_d: float, coupling: float,
                    validity_fraction: float = None) -> TwoModeParams:
        """Elimina c ≈ −(G̃/ω_c)a: Δ̄_eff = Δ̄ + G̃²/ω_c, con guardas −Δ̄ < f·ω_c y G̃ < f·ω_c"""
        fraction = validity_fraction if validity_fraction is not None else self.config.two_mode_validity_fraction
        if omega_c <= 0:
            raise ValidityError("ω_c debe ser > 0 para eliminar el modo c")

        scales = (
            f"O(G̃/ω_c)={coupling / omega_c:.3g}, O(ω_d/ω_c)={omega_d / omega_c:.3g}, "
            f"O(−Δ̄/ω_c)={detuning / omega_c:.3g}"
        )
        if not 0 < detuning < fraction * omega_c:
            raise ValidityError(
                f"Eliminación adiabática inválida: se requiere 0 < −Δ̄ < {fraction:g}·ω_c "
                f"(−Δ̄={detuning:.6g}, ω_c={omega_c:.6g}); {scales}",
                detuning=detuning,
            )
        if not coupling < fraction * omega_c:
            raise ValidityError(
                f"Eliminación adiabática inválida: se requiere G̃ < {fraction:g}·ω_c; {scales}",
                coupling=coupling,
            )
        if coupling > fraction * max(omega_d, 1.0):
            logger.debug(f"G̃ = {coupling:.3g} no es ≪ {{ω_d, γ0}}; {scales}")

        delta_bar = -detuning
        return TwoModeParams(
            delta_bar=delta_bar,
            delta_bar_eff=delta_bar + coupling * coupling / omega_c,
            omega_d=omega_d,
            omega_c=omega_c,
            coupling=coupling,
        )

    @staticmethod
    def two_mode_frequencies(params: TwoModeParams) -> Tuple[float, float]:
        """
        Ω_± = ½(ω_d − Δ̄_eff) ± sqrt(¼(ω_d + Δ̄_eff)² + G̃²)

        La raíz de menor módulo se obtiene del producto Ω_−Ω_+ = −ω_dΔ̄_eff − G̃².
        """
        mean = 0.5 * (params.omega_d - params.delta_bar_eff)
        radius = math.hypot(0.5 * (params.omega_d + params.delta_bar_eff), params.coupling)
        product = -params.omega_d * params.delta_bar_eff - params.coupling ** 2
        if mean >= 0:
            upper = mean + radius
            lower = product / upper if upper != 0.0 else mean - radius
        else:
            lower = mean - radius
            upper = product / lower
        return lower, upper

    def two_mode_weights(self, params: TwoModeParams, branch: TwoModeBranch = "lower") -> np.ndarray:
        """(X_a, X_d) unitario con X_a ≥ 0, análogo 2×2 de los coeficientes de Hopfield"""
        lower, upper = self.two_mode_frequencies(params)
        omega = lower if branch == "lower" else upper
        if params.coupling == 0.0:
            photon = -params.delta_bar_eff
            photon_is_lower = photon <= params.omega_d
            take_photon = photon_is_lower if branch == "lower" else not photon_is_lower
            return np.array([1.0, 0.0]) if take_photon else np.array([0.0, 1.0])

        gap = params.omega_d - omega
        if abs(gap) < self.config.singular_weight_tol:
            raise SingularWeightError(f"Ω = {omega:.15g} coincide con ω_d con G̃ > 0")
        raw = np.array([1.0, params.coupling / gap])
        return raw / np.linalg.norm(raw)

    def mixing_angle(self, params: TwoModeParams, branch: TwoModeBranch = "lower") -> float:
        """Ángulo de rotación θ con (X_a, X_d) = (cos θ, ±sin θ)"""
        weights = self.two_mode_weights(params, branch)
        return math.atan2(abs(weights[1]), weights[0])

    def two_mode_occupation(self, params: TwoModeParams, n_a: float, n_d: float,
                            branch: TwoModeBranch = "lower") -> float:
        """|X_a|²n_a + |X_d|²n_d; el modo eliminado no aporta ocupación"""
        weights = self.two_mode_weights(params, branch)
        return float(weights[0] ** 2 * n_a + weights[1] ** 2 * n_d)

    def endpoints(self, detuning_i: float, detuning_f: float, omega_c: float, omega_d: float,
                  coupling: float, baths: BathSpec, validity_fraction: float = None) -> Tuple[float, float, float, float]:
        """(Ω_i, Ω_f, n_i, n_f) de la rama inferior; n_a de `baths` solo entra en el extremo i"""
        p_i = self.eliminate_c(detuning_i, omega_c, omega_d, coupling, validity_fraction)
        p_f = self.eliminate_c(detuning_f, omega_c, omega_d, coupling, validity_fraction)

        if not detuning_i > omega_d > detuning_f:
            logger.warning(
                f"[WARNING]  Ciclo de dos modos fuera del régimen de motor: "
                f"se espera −Δ̄_i > ω_d > −Δ̄_f (−Δ̄_i={detuning_i:.4g}, ω_d={omega_d:.4g}, −Δ̄_f={detuning_f:.4g})"
            )

        omega_i = self.two_mode_frequencies(p_i)[0]
        omega_f = self.two_mode_frequencies(p_f)[0]

        n_d_hot = bose_factor(omega_d, thermal_ratio(baths.t_phonon, baths.photon_decay_si))
        n_d_cold = bose_factor(omega_d, thermal_ratio(baths.t_photon, baths.photon_decay_si))
        n_i = self.two_mode_occupation(p_i, baths.n_a, n_d_hot)
        n_f = self.two_mode_occupation(p_f, 0.0, n_d_cold)
        return omega_i, omega_f, n_i, n_f

    def two_mode_otto(self, detuning_i: float, detuning_f: float, omega_c: float, omega_d: float,
                      coupling: float, baths: BathSpec, validity_fraction: float = None,
                      check_engine: bool = True) -> CycleResult:
        """Ciclo de Otto sobre Ω_−: η = 1 − Ω_−(−Δ̄_f)/Ω_−(−Δ̄_i)"""
        omega_i, omega_f, n_i, n_f = self.endpoints(
            detuning_i, detuning_f, omega_c, omega_d, coupling, baths, validity_fraction
        )
        result = cycle_from_endpoints(omega_i, omega_f, n_i, n_f)
        if check_engine:
            require_engine(result, label="ciclo de dos modos")
        return result

    def frequency_table(self, detunings: Iterable[float], omega_c: float, omega_d: float,
                        coupling: float, validity_fraction: float = None) -> pd.DataFrame:
        """(detuning, Omega_minus, Omega_plus) sobre una grilla de −Δ̄"""
        rows = []
        for detuning in detunings:
            params = self.eliminate_c(float(detuning), omega_c, omega_d, coupling, validity_fraction)
            lower, upper = self.two_mode_frequencies(params)
            rows.append({"detuning": float(detuning), "Omega_minus": lower, "Omega_plus": upper})
        return pd.DataFrame(rows)

    def efficiency_grid(self, detuning_i: float, detunings_f: Iterable[float], couplings: Iterable[float],
                        omega_c: float, omega_d: float, validity_fraction: float = None) -> pd.DataFrame:
        """Superficie η(−Δ̄_f, G̃) a −Δ̄_i fijo, en orden de grilla (−Δ̄_f externo, G̃ interno)"""
        rows = []
        couplings = [float(g) for g in couplings]
        for detuning_f in detunings_f:
            for coupling in couplings:
                p_i = self.eliminate_c(detuning_i, omega_c, omega_d, coupling, validity_fraction)
                p_f = self.eliminate_c(float(detuning_f), omega_c, omega_d, coupling, validity_fraction)
                omega_i = self.two_mode_frequencies(p_i)[0]
                omega_f = self.two_mode_frequencies(p_f)[0]
                rows.append({
                    "detuning_f": float(detuning_f),
                    "G": coupling,
                    "eta": 1.0 - omega_f / omega_i,
                })
        return pd.DataFrame(rows)

"""
Álgebra cerrada del ciclo de Otto y ocupaciones de Bose
"""

import math

from app.core.errors import DivergentOccupationError, NotAnEngineError
from app.models.cycle import CycleResult


def bose_factor(omega: float, thermal: float) -> float:
    """
    n = 1/(exp(ω/θ) − 1) con θ = k_B T/ħγ0 y ω en γ0.

    Evaluado como e^{−x}/(1 − e^{−x}) para no desbordar a x grande.
    """
    if thermal == 0.0:
        return 0.0
    if omega <= 0.0:
        raise DivergentOccupationError(
            f"Ocupación de Bose divergente para ω = {omega:.6g} con T > 0", omega=omega
        )
    x = omega / thermal
    return math.exp(-x) / -math.expm1(-x)


def cycle_from_endpoints(omega_i: float, omega_f: float, n_i: float, n_f: float) -> CycleResult:
    """
    W = (Ω_i − Ω_f)(n_i − n_f), Q_in = Ω_i(n_i − n_f), Q_out = Ω_f(n_f − n_i), η = 1 − Ω_f/Ω_i
    """
    contrast = n_i - n_f
    efficiency = 1.0 - omega_f / omega_i if omega_i != 0.0 else 0.0
    return CycleResult(
        work=(omega_i - omega_f) * contrast,
        heat_in=omega_i * contrast,
        heat_out=omega_f * (n_f - n_i),
        efficiency=efficiency,
        omega_i=omega_i,
        omega_f=omega_f,
        n_i=n_i,
        n_f=n_f,
    )


def require_engine(result: CycleResult, label: str = "ciclo") -> CycleResult:
    """Eleva NotAnEngineError si W ≤ 0, adjuntando el resultado crudo"""
    if not result.work > 0:
        raise NotAnEngineError(
            f"El {label} no es un motor: W = {result.work:.6g} "
            f"(Ω_i={result.omega_i:.6g}, Ω_f={result.omega_f:.6g}, n_i={result.n_i:.6g}, n_f={result.n_f:.6g})",
            result=result,
        )
    return result

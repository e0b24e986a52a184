"""
Parámetros del modelo de dos modos tras eliminar adiabáticamente el modo c
"""

from pydantic import BaseModel, ConfigDict, Field


class TwoModeParams(BaseModel):
    """Δ̄ y Δ̄_eff = Δ̄ + G̃²/ω_c con signo; frecuencias en γ0"""
    model_config = ConfigDict(frozen=True)

    delta_bar: float
    delta_bar_eff: float
    omega_d: float = Field(ge=0)
    omega_c: float = Field(gt=0)
    coupling: float = Field(ge=0)

    @property
    def detuning(self) -> float:
        """−Δ̄"""
        return -self.delta_bar

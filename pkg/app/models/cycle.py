"""
Modelos del ciclo de Otto: baños, especificación del ciclo y resultados
"""

import math
from typing import Dict, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.models.physical import PhysicalConfig
from app.models.polariton import CouplingMatrix

Branch = Literal["A", "two_mode_lower"]


class BathSpec(BaseModel):
    """Baños fotónico y fonónico; tasas en unidades de γ0"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    t_photon: float = Field(0.0, ge=0, description="K")
    t_phonon: float = Field(100e-9, ge=0, description="K")
    photon_decay_si: float = Field(2 * math.pi * 1e3, gt=0, description="γ0 en rad/s (escala de temperatura)")
    gamma0: float = Field(1.0, gt=0)
    gamma_m: float = Field(0.01, gt=0)
    n_a: float = Field(0.0, ge=0, description="Ocupación del fotón de cavidad")

    @classmethod
    def from_physical(cls, cfg: PhysicalConfig, n_a: float = 0.0) -> "BathSpec":
        """Baños a partir de la configuración experimental"""
        return cls(
            t_photon=cfg.t_photon,
            t_phonon=cfg.t_phonon,
            photon_decay_si=cfg.photon_decay,
            gamma_m=cfg.phonon_decay / cfg.photon_decay,
            n_a=n_a,
        )


class OttoCycleSpec(BaseModel):
    """Ciclo ideal entre −Δ̄_i (punto caliente, baño fonónico) y −Δ̄_f (baño fotónico)"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    detuning_i: float = Field(description="−Δ̄_i")
    detuning_f: float = Field(description="−Δ̄_f")
    branch: Branch = "A"
    omega_c: float = Field(ge=0)
    omega_d: float = Field(ge=0)
    coupling: float = Field(ge=0)
    baths: BathSpec = Field(default_factory=BathSpec)
    validity_fraction: Optional[float] = Field(None, gt=0, lt=1, description="Guarda de dos modos")

    @model_validator(mode="after")
    def _ordered_detunings(self) -> "OttoCycleSpec":
        if not self.detuning_i >= self.detuning_f > 0:
            raise ValueError(
                f"Se requiere −Δ̄_i ≥ −Δ̄_f > 0 (−Δ̄_i={self.detuning_i}, −Δ̄_f={self.detuning_f})"
            )
        return self

    def matrix(self, detuning: float) -> CouplingMatrix:
        return CouplingMatrix(detuning=detuning, omega_c=self.omega_c, omega_d=self.omega_d, coupling=self.coupling)


class CycleResult(BaseModel):
    """Trabajo y calores en ħγ0, frecuencias en γ0"""
    model_config = ConfigDict(frozen=True)

    work: float
    heat_in: float
    heat_out: float
    efficiency: float
    omega_i: float
    omega_f: float
    n_i: float
    n_f: float

    @property
    def is_engine(self) -> bool:
        return self.work > 0

    def to_row(self) -> Dict[str, float]:
        """Fila CSV con el orden de columnas fijo"""
        return {
            "W": self.work,
            "Q_in": self.heat_in,
            "Q_out": self.heat_out,
            "eta": self.efficiency,
            "Omega_i": self.omega_i,
            "Omega_f": self.omega_f,
            "n_i": self.n_i,
            "n_f": self.n_f,
        }


class FiniteCycleSpec(BaseModel):
    """Ciclo con isocoras de duración finita; tasas en γ0, duraciones en 1/γ0"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    ideal: OttoCycleSpec
    tau_bc: float = Field(ge=0, description="Isocora contra el baño fotónico")
    tau_da: float = Field(ge=0, description="Isocora contra el baño fonónico")
    gamma_photon_side: Optional[float] = Field(None, gt=0, description="Por defecto γ0")
    gamma_phonon_side: Optional[float] = Field(None, gt=0, description="Por defecto γ_m")

    @property
    def photon_rate(self) -> float:
        return self.gamma_photon_side if self.gamma_photon_side is not None else self.ideal.baths.gamma0

    @property
    def phonon_rate(self) -> float:
        return self.gamma_phonon_side if self.gamma_phonon_side is not None else self.ideal.baths.gamma_m


class LimitCycleState(BaseModel):
    """Ocupaciones de las cuatro esquinas bajo repetición estacionaria"""
    model_config = ConfigDict(frozen=True)

    n_a: float
    n_b: float
    n_c: float
    n_d: float
    converged: bool = True
    condensate_lifetime_exceeded: bool = False

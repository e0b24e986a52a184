"""
Configuración de corrida (JSON) validada con pydantic

Todos los valores de los bloques de tarea están en unidades de γ0 (frecuencias y
tasas) o 1/γ0 (tiempos); solo el bloque `physical` admite SI con tags de unidad.
"""

from typing import Dict, FrozenSet, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.models.cycle import Branch
from app.models.physical import PhysicalConfig
from app.models.protocol import Ansatz, Dispersion

Scale = Literal["linear", "log"]
AxisName = Literal["detuning_f", "detuning_i", "coupling", "oam", "tau_bc", "tau_da", "tau"]
OutputFormat = Literal["csv", "csv+svg"]


class _Block(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class GridSpec(_Block):
    """Grilla 1D {min, max, n_points, scale}"""
    min: float
    max: float
    n_points: int = Field(ge=2)
    scale: Scale = "linear"

    @model_validator(mode="after")
    def _ordered(self) -> "GridSpec":
        if not self.min < self.max:
            raise ValueError(f"Se requiere min < max (min={self.min}, max={self.max})")
        if self.scale == "log" and self.min <= 0:
            raise ValueError("La escala log requiere min > 0")
        return self

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.min, self.max, self.n_points)
        return np.linspace(self.min, self.max, self.n_points)


class SpectrumBlock(_Block):
    detuning: GridSpec = GridSpec(min=0.1, max=600.0, n_points=400)
    include_bare: bool = True


class OttoBlock(_Block):
    """Extremos del ciclo; −Δ̄_i absoluto o como múltiplo de ω_c (exactamente uno)"""
    detuning_i: Optional[float] = Field(None, gt=0)
    detuning_i_factor: Optional[float] = Field(None, gt=0, description="−Δ̄_i = factor·ω_c")
    detuning_f: float = Field(gt=0)
    branch: Branch = "A"
    n_a: Optional[float] = Field(None, ge=0, description="Ocupación del fotón de cavidad; None usa Config.photon_occupation")
    validity_fraction: Optional[float] = Field(None, gt=0, lt=1)

    @model_validator(mode="after")
    def _one_hot_detuning(self) -> "OttoBlock":
        if (self.detuning_i is None) == (self.detuning_i_factor is None):
            raise ValueError("Indique exactamente uno de detuning_i o detuning_i_factor")
        return self


class AxisSpec(GridSpec):
    name: AxisName


class SweepGrid(_Block):
    """1 o 2 ejes del whitelist; filas en orden de grilla (primer eje externo)"""
    axes: List[AxisSpec] = Field(min_length=1, max_length=2)

    @model_validator(mode="after")
    def _distinct(self) -> "SweepGrid":
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ValueError(f"Ejes repetidos: {names}")
        return self

    @property
    def names(self) -> List[str]:
        return [a.name for a in self.axes]


class StaBlock(_Block):
    """Extremos como Ω (omega_i/omega_f) o como −Δ̄ resuelto por el espectro (exactamente un par)"""
    ansatz: Ansatz = "polynomial"
    tau: float = Field(gt=0)
    omega_i: Optional[float] = Field(None, gt=0)
    omega_f: Optional[float] = Field(None, gt=0)
    detuning_i: Optional[float] = Field(None, gt=0)
    detuning_f: Optional[float] = Field(None, gt=0)
    n_samples: int = Field(2001, ge=2)
    dispersion: Dispersion = "three_mode"
    invert_detuning: bool = True
    validity_fraction: Optional[float] = Field(None, gt=0, lt=1)

    @model_validator(mode="after")
    def _one_endpoint_pair(self) -> "StaBlock":
        omegas = self.omega_i is not None and self.omega_f is not None
        detunings = self.detuning_i is not None and self.detuning_f is not None
        partial = (self.omega_i is None) != (self.omega_f is None) or (self.detuning_i is None) != (self.detuning_f is None)
        if partial or omegas == detunings:
            raise ValueError("Indique exactamente un par de extremos: (omega_i, omega_f) o (detuning_i, detuning_f)")
        return self


class FiniteBlock(_Block):
    tau_bc: float = Field(ge=0)
    tau_da: float = Field(ge=0)
    gamma_photon_side: Optional[float] = Field(None, gt=0)
    gamma_phonon_side: Optional[float] = Field(None, gt=0)


class TwoModeBlock(_Block):
    """Dos modos: tabla Ω_± sobre −Δ̄ y superficie η(−Δ̄_f, G̃) a −Δ̄_i fijo"""
    detuning: GridSpec
    detuning_i: float = Field(gt=0)
    coupling: GridSpec
    validity_fraction: Optional[float] = Field(None, gt=0, lt=1)


class LangevinBlock(_Block):
    """Ensamble de modos desnudos (a, c, d) o de la rama A con γ_eff y n̄_eff"""
    mode: Literal["bare", "polariton"] = "polariton"
    detuning: float = Field(gt=0, description="−Δ̄ de la rama (o del fotón desnudo)")
    dt: float = Field(gt=0)
    horizon: float = Field(gt=0)
    n_traj: int = Field(1000, ge=1)
    record_every: int = Field(1, ge=1)
    method: Literal["euler_maruyama", "exact"] = "euler_maruyama"
    schedule_file: Optional[str] = None
    bath: Literal["phonon", "photon"] = "phonon"
    occupations: Optional[List[float]] = None
    initial_occupation: Optional[List[float]] = None
    gamma_eff: Optional[float] = Field(None, gt=0)
    seed: Optional[int] = Field(None, ge=0)


class OutputBlock(_Block):
    directory: str = "output"
    format: OutputFormat = "csv"


class RunConfig(_Block):
    physical: PhysicalConfig = Field(default_factory=PhysicalConfig)
    spectrum: Optional[SpectrumBlock] = None
    otto: Optional[OttoBlock] = None
    sweep: Optional[SweepGrid] = None
    sta: Optional[StaBlock] = None
    finite: Optional[FiniteBlock] = None
    twomode: Optional[TwoModeBlock] = None
    langevin: Optional[LangevinBlock] = None
    output: OutputBlock = Field(default_factory=OutputBlock)


TASK_BLOCKS = ("spectrum", "otto", "sweep", "sta", "finite", "twomode", "langevin")

# (requeridos, opcionales) por subcomando
SUBCOMMAND_BLOCKS: Dict[str, tuple] = {
    "spectrum": (frozenset({"spectrum"}), frozenset()),
    "hopfield": (frozenset({"spectrum"}), frozenset()),
    "otto": (frozenset({"otto"}), frozenset()),
    "sweep": (frozenset({"otto", "sweep"}), frozenset({"finite"})),
    "sta": (frozenset({"sta"}), frozenset()),
    "finite": (frozenset({"otto", "finite"}), frozenset()),
    "twomode": (frozenset({"twomode"}), frozenset()),
    "langevin": (frozenset({"langevin"}), frozenset()),
}


def present_blocks(run_config: RunConfig) -> FrozenSet[str]:
    return frozenset(name for name in TASK_BLOCKS if getattr(run_config, name) is not None)

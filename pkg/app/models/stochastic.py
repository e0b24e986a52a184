"""
Modelos de la simulación de Langevin: especificación de ruido, cronogramas de
frecuencia y ensambles de trayectorias con sus acumuladores
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.errors import ConfigValidationError


class NoiseSpec(BaseModel):
    """Ocupaciones de equilibrio y tasas por modo; ruidos cruzados idénticamente nulos"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    occupations: List[float] = Field(min_length=1)
    damping: List[float] = Field(min_length=1, description="Tasas en γ0")
    seed: int = Field(20231115, ge=0, lt=2 ** 64)
    labels: Optional[List[str]] = None

    @model_validator(mode="after")
    def _consistent(self) -> "NoiseSpec":
        if len(self.occupations) != len(self.damping):
            raise ValueError("occupations y damping deben tener la misma longitud")
        if any(n < 0 for n in self.occupations):
            raise ValueError("Las ocupaciones deben ser >= 0")
        if any(g <= 0 for g in self.damping):
            raise ValueError("Las tasas de amortiguamiento deben ser > 0")
        if self.labels is not None and len(self.labels) != len(self.occupations):
            raise ValueError("labels debe tener una etiqueta por modo")
        return self

    @property
    def n_modes(self) -> int:
        return len(self.occupations)

    @property
    def mode_labels(self) -> List[str]:
        return list(self.labels) if self.labels else [f"m{k}" for k in range(self.n_modes)]


class FrequencySchedule:
    """ω(t) por interpolación lineal entre nodos; constante fuera del rango"""

    def __init__(self, times, values, kind: str = "table"):
        times = np.asarray(times, dtype=float)
        values = np.asarray(values, dtype=float)
        if times.ndim != 1 or times.shape != values.shape or len(times) == 0:
            raise ConfigValidationError("El cronograma requiere columnas t y omega de igual longitud")
        if len(times) > 1 and np.any(np.diff(times) <= 0):
            raise ConfigValidationError("Los tiempos del cronograma deben ser estrictamente crecientes")
        self.times = times
        self.values = values
        self.kind = kind

    @classmethod
    def constant(cls, omega: float) -> "FrequencySchedule":
        return cls([0.0], [omega], kind="constant")

    @classmethod
    def linear(cls, omega_start: float, omega_end: float, t_start: float, t_end: float) -> "FrequencySchedule":
        return cls([t_start, t_end], [omega_start, omega_end], kind="linear")

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "FrequencySchedule":
        """CSV con columnas t, omega (líneas '#' ignoradas)"""
        path = Path(path)
        if not path.is_file():
            raise ConfigValidationError(f"No existe el cronograma de frecuencias: {path}", path=str(path))
        try:
            frame = pd.read_csv(path, comment="#")
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise ConfigValidationError(f"Cronograma ilegible {path}: {e}", path=str(path)) from e
        missing = {"t", "omega"} - set(frame.columns)
        if missing:
            raise ConfigValidationError(
                f"Cronograma {path} sin columnas {sorted(missing)}; columnas: {list(frame.columns)}"
            )
        return cls(frame["t"].to_numpy(), frame["omega"].to_numpy(), kind="table")

    def __call__(self, t) -> np.ndarray:
        return np.interp(t, self.times, self.values)

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class TrajectoryEnsemble:
    """
    Estadísticas de un ensamble de trayectorias en los instantes de registro.

    Los acumuladores por intervalo (heat/work) tienen un elemento menos que
    los registros; los acumulados (cumulative_*) arrancan en cero.
    """

    labels: List[str]
    n_traj: int
    dt: float
    horizon: float
    record_every: int
    seed: int
    method: str
    times: np.ndarray
    frequencies: np.ndarray
    occupation_mean: np.ndarray
    occupation_sem: np.ndarray
    cross_mean: np.ndarray
    cross_sem: np.ndarray
    energy_mean: np.ndarray
    energy_sem: np.ndarray
    heat_mean: np.ndarray
    heat_sem: np.ndarray
    work_mean: np.ndarray
    work_sem: np.ndarray
    cumulative_heat_mean: np.ndarray
    cumulative_heat_sem: np.ndarray
    cumulative_work_mean: np.ndarray
    cumulative_work_sem: np.ndarray
    closure_mean: np.ndarray
    closure_sem: np.ndarray
    amplitudes: Optional[np.ndarray] = None

    @property
    def n_modes(self) -> int:
        return len(self.labels)

    @property
    def record_dt(self) -> float:
        return self.dt * self.record_every

    def to_frame(self) -> pd.DataFrame:
        """Serie temporal con ocupaciones, energía y acumulados (más sus errores estándar)"""
        data = {"t": self.times}
        for k, label in enumerate(self.labels):
            data[f"omega_{label}"] = self.frequencies[:, k]
            data[f"n_{label}"] = self.occupation_mean[:, k]
            data[f"n_{label}_sem"] = self.occupation_sem[:, k]
        for i, j in zip(*np.triu_indices(self.n_modes, k=1)):
            name = f"cross_{self.labels[i]}_{self.labels[j]}"
            data[f"{name}_re"] = self.cross_mean[:, i, j].real
            data[f"{name}_im"] = self.cross_mean[:, i, j].imag
        data["energy"] = self.energy_mean
        data["energy_sem"] = self.energy_sem
        data["heat"] = self.cumulative_heat_mean
        data["heat_sem"] = self.cumulative_heat_sem
        data["work"] = self.cumulative_work_mean
        data["work_sem"] = self.cumulative_work_sem
        return pd.DataFrame(data)

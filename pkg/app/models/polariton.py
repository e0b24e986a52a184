"""
Modelos del espectro polaritónico: matriz de acoplamiento, ramas y pesos de Hopfield
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

BRANCH_ORDER = ("A", "C", "B")  # orden ascendente de frecuencias
MODE_ORDER = ("a", "c", "d")


class CouplingMatrix(BaseModel):
    """
    Λ = [[−Δ̄, G̃, G̃], [G̃, ω_c, 0], [G̃, 0, ω_d]] en unidades de γ0.

    `detuning` guarda −Δ̄ (la variable de control positiva del motor).
    """
    model_config = ConfigDict(frozen=True)

    detuning: float
    omega_c: float = Field(ge=0)
    omega_d: float = Field(ge=0)
    coupling: float = Field(ge=0)

    @property
    def delta_bar(self) -> float:
        return -self.detuning

    def as_array(self) -> np.ndarray:
        g = self.coupling
        return np.array([
            [self.detuning, g, g],
            [g, self.omega_c, 0.0],
            [g, 0.0, self.omega_d],
        ])

    def with_detuning(self, detuning: float) -> "CouplingMatrix":
        return self.model_copy(update={"detuning": detuning})


class BranchTriple(NamedTuple):
    """Frecuencias por etiqueta de rama"""
    A: float
    B: float
    C: float


@dataclass(frozen=True)
class PolaritonSpectrum:
    """
    Ramas ordenadas (A ≤ C ≤ B) y matriz de Hopfield.

    hopfield[k, j]: peso del modo desnudo k ∈ (a, c, d) en la rama j ∈ (A, C, B),
    columnas normalizadas y con X_a ≥ 0.
    """
    matrix: CouplingMatrix
    frequencies: np.ndarray  # (ω_A, ω_C, ω_B)
    hopfield: np.ndarray
    normalizers: np.ndarray

    @property
    def omega_A(self) -> float:
        return float(self.frequencies[0])

    @property
    def omega_C(self) -> float:
        return float(self.frequencies[1])

    @property
    def omega_B(self) -> float:
        return float(self.frequencies[2])

    def branch_index(self, branch: str) -> int:
        try:
            return BRANCH_ORDER.index(branch)
        except ValueError:
            raise ValueError(f"Rama desconocida: {branch} (opciones: {BRANCH_ORDER})") from None

    def frequency(self, branch: str) -> float:
        return float(self.frequencies[self.branch_index(branch)])

    def weights(self, branch: str) -> np.ndarray:
        """(X_a, X_c, X_d) de la rama"""
        return self.hopfield[:, self.branch_index(branch)].copy()

    def eigenvectors(self) -> np.ndarray:
        """
        Autovectores de Λ a partir de las columnas de Hopfield.

        Los coeficientes del operador de modo normal llevan signo opuesto en las
        componentes c, d respecto de los autovectores de Λ (equivale a G̃ → −G̃).
        """
        return np.diag([1.0, -1.0, -1.0]) @ self.hopfield

"""
Modelos de protocolos de atajo a la adiabaticidad (STA)
"""

from dataclasses import dataclass, replace
from typing import Literal, Optional

import numpy as np
import pandas as pd

Ansatz = Literal["polynomial", "trigonometric"]
Dispersion = Literal["three_mode", "two_mode"]


@dataclass(frozen=True)
class StaProtocol:
    """Muestras uniformes de ρ(t) y Ω(t)² sobre [0, τ]; detuning opcional tras la inversión"""

    ansatz: Ansatz
    tau: float
    omega_i: float
    omega_f: float
    times: np.ndarray
    rho: np.ndarray
    rho_dot: np.ndarray
    rho_ddot: np.ndarray
    omega_squared: np.ndarray
    feasible: bool
    reversed: bool = False
    detuning: Optional[np.ndarray] = None

    @property
    def omega(self) -> np.ndarray:
        """Ω(t); muestras no factibles se recortan a 0"""
        return np.sqrt(np.clip(self.omega_squared, 0.0, None))

    @property
    def min_omega_squared(self) -> float:
        return float(np.min(self.omega_squared))

    @property
    def argmin_time(self) -> float:
        return float(self.times[int(np.argmin(self.omega_squared))])

    def with_detuning(self, detuning: np.ndarray) -> "StaProtocol":
        return replace(self, detuning=np.asarray(detuning, dtype=float))

    def ermakov_pinney_residual(self) -> np.ndarray:
        """ρ̈ + Ω²ρ − Ω_i²/ρ³ (cero salvo redondeo)"""
        return self.rho_ddot + self.omega_squared * self.rho - self.omega_i ** 2 / self.rho ** 3

    def to_frame(self) -> pd.DataFrame:
        data = {
            "t": self.times,
            "rho": self.rho,
            "rho_dot": self.rho_dot,
            "rho_ddot": self.rho_ddot,
            "omega_squared": self.omega_squared,
            "omega": self.omega,
        }
        if self.detuning is not None:
            data["detuning"] = self.detuning
        return pd.DataFrame(data)


@dataclass(frozen=True)
class MeanEnergy:
    """⟨H⟩(t) en ħγ0 para un estado inicial de Fock o térmico con ocupación n"""

    occupation: float
    times: np.ndarray
    values: np.ndarray

    @property
    def initial(self) -> float:
        return float(self.values[0])

    @property
    def final(self) -> float:
        return float(self.values[-1])


@dataclass(frozen=True)
class FundamentalSolutions:
    """Soluciones X (X(0)=1, Ẋ(0)=0) e Y (Y(0)=0, Ẏ(0)=1) de ẍ + Ω²(t)x = 0"""

    times: np.ndarray
    x: np.ndarray
    x_dot: np.ndarray
    y: np.ndarray
    y_dot: np.ndarray

    @property
    def wronskian(self) -> np.ndarray:
        return self.x * self.y_dot - self.x_dot * self.y

    def husimi_q_star(self, omega_i: float, omega_f: float) -> float:
        """Q* = [Ω_i²(Ω_f²Y² + Ẏ²) + (Ω_f²X² + Ẋ²)]/(2Ω_iΩ_f) evaluado en t = τ"""
        x, xd, y, yd = self.x[-1], self.x_dot[-1], self.y[-1], self.y_dot[-1]
        numerator = omega_i ** 2 * (omega_f ** 2 * y ** 2 + yd ** 2) + (omega_f ** 2 * x ** 2 + xd ** 2)
        return float(numerator / (2.0 * omega_i * omega_f))

"""
Paso de Ornstein-Uhlenbeck complejo y acumuladores de momentos

dx = (−iω − γ/2)x dt + √(γn̄) dW, con dW complejo de E|dW|² = dt repartido por
igual entre parte real e imaginaria (convención de orden normal, sin ruido de vacío).
"""

from typing import Sequence, Tuple

import numpy as np

from app.core.errors import StabilityError

METHODS = ("euler_maruyama", "exact")


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    """ξ complejo estándar: E|ξ|² = 1, E[ξ²] = 0"""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * np.sqrt(0.5)


def trajectory_normals(rngs: Sequence[np.random.Generator], shape) -> np.ndarray:
    """Una tanda de ξ por trayectoria, cada una de su propio generador (trayectorias en el eje 0)"""
    return np.stack([complex_normal(rng, shape) for rng in rngs])


def step_coefficients(omega: np.ndarray, gamma: np.ndarray, occupation: np.ndarray, dt: float,
                      method: str = "euler_maruyama") -> Tuple[np.ndarray, np.ndarray]:
    """(propagador, desviación del ruido) de un paso dt"""
    omega = np.asarray(omega, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    occupation = np.asarray(occupation, dtype=float)
    rate = -1j * omega - 0.5 * gamma
    if method == "exact":
        return np.exp(rate * dt), np.sqrt(occupation * -np.expm1(-gamma * dt))
    if method == "euler_maruyama":
        return 1.0 + rate * dt, np.sqrt(gamma * occupation * dt)
    raise ValueError(f"Método desconocido: {method} (opciones: {', '.join(METHODS)})")


def check_stability(dt: float, omega_max: float, gamma_max: float, limit: float) -> None:
    """dt·max(|ω|, γ) < limit"""
    product = dt * max(abs(omega_max), gamma_max)
    if not product < limit:
        raise StabilityError(
            f"Paso inestable: dt·max(ω, γ) = {product:.4g} >= {limit:g}",
            dt=dt, omega_max=omega_max, gamma_max=gamma_max,
        )


class Moments:
    """
    Sumas y sumas de cuadrados sobre trayectorias con compensación de Kahan.

    Las trayectorias se acumulan una a una en orden de índice, así que el
    resultado no depende de cómo se agrupen en bloques.
    """

    def __init__(self, shape, dtype=float):
        self._complex = np.issubdtype(np.dtype(dtype), np.complexfloating)
        kind = complex if self._complex else float
        self.total = np.zeros(shape, dtype=kind)
        self.total_sq = np.zeros(shape, dtype=kind)
        self._carry = np.zeros(shape, dtype=kind)
        self._carry_sq = np.zeros(shape, dtype=kind)
        self.count = 0

    @staticmethod
    def _kahan(total: np.ndarray, carry: np.ndarray, row: np.ndarray) -> None:
        y = row - carry
        t = total + y
        carry[...] = (t - total) - y
        total[...] = t

    def add(self, values: np.ndarray) -> None:
        """Acumula `values` (trayectorias en el eje 0, en orden)"""
        values = np.asarray(values)
        if self._complex:
            squares = values.real ** 2 + 1j * values.imag ** 2
        else:
            squares = values ** 2
        for row, row_sq in zip(values, squares):
            self._kahan(self.total, self._carry, row)
            self._kahan(self.total_sq, self._carry_sq, row_sq)
        self.count += len(values)

    def finalize(self, n: int = None) -> Tuple[np.ndarray, np.ndarray]:
        """(media, error estándar de la media); para complejos el error va por componente"""
        n = self.count if n is None else n
        mean = self.total / n
        if n < 2:
            return mean, np.zeros_like(mean)
        if self._complex:
            var_re = np.clip(self.total_sq.real - n * mean.real ** 2, 0.0, None) / (n - 1)
            var_im = np.clip(self.total_sq.imag - n * mean.imag ** 2, 0.0, None) / (n - 1)
            return mean, np.sqrt(var_re / n) + 1j * np.sqrt(var_im / n)
        var = np.clip(self.total_sq - n * mean ** 2, 0.0, None) / (n - 1)
        return mean, np.sqrt(var / n)

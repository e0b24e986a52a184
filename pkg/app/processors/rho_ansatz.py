"""
Ansätze del factor de escala ρ(t) para atajos a la adiabaticidad

Ambos cumplen ρ(0)=1, ρ(τ)=√(Ω_i/Ω_f) con ρ̇ = ρ̈ = 0 en los extremos.
"""

from typing import Callable, Dict, Tuple

import numpy as np

from app.core.errors import DomainError

RhoTriple = Tuple[np.ndarray, np.ndarray, np.ndarray]


def _prepare(t, tau: float, omega_i: float, omega_f: float):
    if tau <= 0:
        raise DomainError(f"τ debe ser > 0 (τ={tau})")
    if omega_i <= 0 or omega_f <= 0:
        raise DomainError("Ω_i y Ω_f deben ser > 0")
    t = np.asarray(t, dtype=float)
    slack = 1e-12 * tau
    if np.any(t < -slack) or np.any(t > tau + slack):
        raise DomainError(f"t fuera de [0, τ] con τ = {tau}")
    s = np.clip(t / tau, 0.0, 1.0)
    b = np.sqrt(omega_i / omega_f) - 1.0
    return s, b


def rho_polynomial(t, tau: float, omega_i: float, omega_f: float) -> RhoTriple:
    """ρ₁ = 1 + b(6s⁵ − 15s⁴ + 10s³), s = t/τ"""
    s, b = _prepare(t, tau, omega_i, omega_f)
    rho = 1.0 + b * s ** 3 * (10.0 + s * (-15.0 + 6.0 * s))
    rho_dot = b * 30.0 * s ** 2 * (1.0 - s) ** 2 / tau
    rho_ddot = b * 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s) / tau ** 2
    return rho, rho_dot, rho_ddot


def rho_trigonometric(t, tau: float, omega_i: float, omega_f: float) -> RhoTriple:
    """ρ₂ = 1 + b[½ − (9/16)cos(πs) + (1/16)cos(3πs)]"""
    s, b = _prepare(t, tau, omega_i, omega_f)
    k = np.pi / tau
    rho = 1.0 + b * (0.5 - 9.0 / 16.0 * np.cos(np.pi * s) + 1.0 / 16.0 * np.cos(3.0 * np.pi * s))
    rho_dot = b * k * (9.0 / 16.0 * np.sin(np.pi * s) - 3.0 / 16.0 * np.sin(3.0 * np.pi * s))
    rho_ddot = b * k ** 2 * 9.0 / 16.0 * (np.cos(np.pi * s) - np.cos(3.0 * np.pi * s))
    return rho, rho_dot, rho_ddot


ANSATZE: Dict[str, Callable[..., RhoTriple]] = {
    "polynomial": rho_polynomial,
    "trigonometric": rho_trigonometric,
}


def omega_squared(rho: np.ndarray, rho_ddot: np.ndarray, omega_i: float) -> np.ndarray:
    """Inversión de Ermakov-Pinney: Ω² = Ω_i²/ρ⁴ − ρ̈/ρ"""
    return omega_i ** 2 / rho ** 4 - rho_ddot / rho

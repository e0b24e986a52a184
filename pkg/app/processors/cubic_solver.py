"""
Raíces reales del polinomio característico de Λ por la fórmula trigonométrica de Cardano
"""

import math
from typing import Callable, Sequence, Tuple

from app.core.errors import ComplexRootError

Roots = Tuple[float, float, float]


def characteristic_coefficients(detuning: float, omega_c: float, omega_d: float,
                                coupling: float) -> Tuple[float, float, float]:
    """Coeficientes de λ³ + c1λ² + c2λ + c3 con Δ̄ = −detuning"""
    delta_bar = -detuning
    g2 = coupling * coupling
    c1 = delta_bar - omega_c - omega_d
    c2 = omega_c * omega_d - delta_bar * (omega_c + omega_d) - 2.0 * g2
    c3 = g2 * (omega_c + omega_d) + delta_bar * omega_c * omega_d
    return c1, c2, c3


def horner(c1: float, c2: float, c3: float) -> Tuple[Callable[[float], float], Callable[[float], float]]:
    """Polinomio mónico y su derivada evaluados por Horner"""
    def value(lam: float) -> float:
        return ((lam + c1) * lam + c2) * lam + c3

    def slope(lam: float) -> float:
        return (3.0 * lam + 2.0 * c1) * lam + c2

    return value, slope


def secular_determinant(detuning: float, omega_c: float, omega_d: float,
                        coupling: float) -> Tuple[Callable[[float], float], Callable[[float], float]]:
    """
    det(Λ − λ) en forma factorizada y su derivada analítica.

    Evita la cancelación de los coeficientes expandidos cerca de las raíces.
    """
    g2 = coupling * coupling

    def value(lam: float) -> float:
        xa, xc, xd = detuning - lam, omega_c - lam, omega_d - lam
        return xa * xc * xd - g2 * (xc + xd)

    def slope(lam: float) -> float:
        xa, xc, xd = detuning - lam, omega_c - lam, omega_d - lam
        return -(xc * xd + xa * xd + xa * xc) + 2.0 * g2

    return value, slope


def polish_roots(roots: Sequence[float], value: Callable[[float], float],
                 slope: Callable[[float], float], iterations: int = 4) -> Roots:
    """
    Refinamiento de Newton sobre raíces aisladas.

    Un paso se acepta solo si reduce el residuo y es menor que media separación
    a la raíz vecina más cercana (no puede saltar de rama).
    """
    polished = list(roots)
    for idx, lam in enumerate(polished):
        others = [r for j, r in enumerate(polished) if j != idx]
        gap = min(abs(lam - r) for r in others) if others else math.inf
        residual = value(lam)
        for _ in range(iterations):
            if residual == 0.0:
                break
            derivative = slope(lam)
            if derivative == 0.0:
                break
            step = residual / derivative
            if abs(step) >= 0.5 * gap:
                break
            candidate = lam - step
            candidate_residual = value(candidate)
            if abs(candidate_residual) >= abs(residual):
                break
            lam, residual = candidate, candidate_residual
        polished[idx] = lam
    polished.sort()
    return polished[0], polished[1], polished[2]


def cardano_roots(c1: float, c2: float, c3: float, clamp_tol: float = 1e-9) -> Roots:
    """
    Tres raíces reales ordenadas de λ³ + c1λ² + c2λ + c3.

    R_k = −c1/3 + ρ cos((θ − 2πk)/3), ρ = 2√(−p/3), θ = acos((3q/2p)√(−3/p)).
    El argumento del acos se recorta a [−1, 1] dentro de `clamp_tol`.
    """
    shift = -c1 / 3.0
    p = c2 - c1 * c1 / 3.0
    q = 2.0 * c1 ** 3 / 27.0 - c1 * c2 / 3.0 + c3

    scale = max(1.0, abs(c1), math.sqrt(abs(c2)), abs(c3) ** (1.0 / 3.0))
    if p >= -1e-14 * scale * scale:
        # p ≈ 0: raíz triple si q también se anula
        if abs(q) <= 1e-12 * scale ** 3:
            return shift, shift, shift
        raise ComplexRootError(f"Cúbica sin tres raíces reales (p={p:.6g}, q={q:.6g})", p=p, q=q)

    argument = (3.0 * q / (2.0 * p)) * math.sqrt(-3.0 / p)
    if abs(argument) > 1.0 + clamp_tol:
        raise ComplexRootError(
            f"Argumento de acos fuera de rango: {argument:.12g}",
            argument=argument, p=p, q=q,
        )
    argument = min(1.0, max(-1.0, argument))

    theta = math.acos(argument)
    rho = 2.0 * math.sqrt(-p / 3.0)
    roots = sorted(shift + rho * math.cos((theta - 2.0 * math.pi * k) / 3.0) for k in range(3))

    value, slope = horner(c1, c2, c3)
    return polish_roots(roots, value, slope)

"""
Servicio de atajos a la adiabaticidad: síntesis de Ω(t) vía Ermakov-Pinney,
inversión a protocolos de detuning y diagnóstico de adiabaticidad Q*
"""

import logging
from dataclasses import replace
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline
from scipy.optimize import bisect

from app.core.config import Config
from app.core.errors import (
    DomainError,
    InfeasibleProtocolError,
    IntegrationError,
    UnattainableFrequencyError,
    ValidityError,
)
from app.models.protocol import Ansatz, Dispersion, FundamentalSolutions, MeanEnergy, StaProtocol
from app.processors.rho_ansatz import ANSATZE, omega_squared
from app.services.spectrum_service import SpectrumService
from app.services.two_mode_service import TwoModeService

logger = logging.getLogger(__name__)

SAMPLES_PER_PERIOD = 20


class StaService:
    """Servicio para protocolos STA de las isentropas"""

    def __init__(self, spectrum_service: SpectrumService = None, two_mode_service: TwoModeService = None,
                 config: Config = None):
        """
        Constructor con Dependency Injection estricta

        Args:
            spectrum_service: Dispersión ω_A(−Δ̄) de tres modos
            two_mode_service: Dispersión Ω_−(−Δ̄) de dos modos
            config: Configuración (tolerancias ODE y bracket de inversión)
        """
        if spectrum_service is None:
            raise ValueError("spectrum_service es requerido - use build_services() para crear instancias")
        if two_mode_service is None:
            raise ValueError("two_mode_service es requerido - use build_services() para crear instancias")
        if config is None:
            raise ValueError("config es requerido - use build_services() para crear instancias")
        self.spectrum_service = spectrum_service
        self.two_mode_service = two_mode_service
        self.config = config

    # ------------------------------------------------------------------
    # Síntesis de Ω(t)
    # ------------------------------------------------------------------

    @staticmethod
    def rho(ansatz: Ansatz, t, tau: float, omega_i: float, omega_f: float):
        if ansatz not in ANSATZE:
            raise DomainError(f"Ansatz desconocido: {ansatz} (opciones: {', '.join(ANSATZE)})")
        return ANSATZE[ansatz](t, tau, omega_i, omega_f)

    def omega_protocol(self, ansatz: Ansatz, tau: float, omega_i: float, omega_f: float,
                       n_samples: int = 2001, strict: bool = True) -> StaProtocol:
        """
        Ω(t)² = Ω_i²/ρ⁴ − ρ̈/ρ sobre una grilla uniforme con derivadas analíticas de ρ

        Con strict=False un protocolo no factible se devuelve con feasible=False
        en lugar de lanzar InfeasibleProtocolError.
        """
        if n_samples < 2:
            raise DomainError("n_samples debe ser >= 2")
        times = np.linspace(0.0, tau, n_samples)
        rho, rho_dot, rho_ddot = self.rho(ansatz, times, tau, omega_i, omega_f)
        w2 = omega_squared(rho, rho_ddot, omega_i)

        protocol = StaProtocol(
            ansatz=ansatz,
            tau=tau,
            omega_i=omega_i,
            omega_f=omega_f,
            times=times,
            rho=rho,
            rho_dot=rho_dot,
            rho_ddot=rho_ddot,
            omega_squared=w2,
            feasible=bool(np.min(w2) > 0),
        )
        if not protocol.feasible:
            message = (
                f"Protocolo {ansatz} no factible con τ = {tau:.6g}: "
                f"min Ω² = {protocol.min_omega_squared:.6g} en t = {protocol.argmin_time:.6g}"
            )
            if strict:
                raise InfeasibleProtocolError(
                    message, minimum=protocol.min_omega_squared, location=protocol.argmin_time
                )
            logger.warning(f"[WARNING]  {message}")
        return protocol

    def omega_squared_function(self, protocol: StaProtocol) -> Callable[[float], float]:
        """Ω²(t) analítico del protocolo (sin interpolar las muestras)"""
        if protocol.reversed:
            # el protocolo de expansión original va de Ω_f a Ω_i de este protocolo
            def forward(t):
                rho, _, rho_ddot = self.rho(protocol.ansatz, t, protocol.tau, protocol.omega_f, protocol.omega_i)
                return omega_squared(rho, rho_ddot, protocol.omega_f)

            return lambda t: float(forward(protocol.tau - t))

        def direct(t):
            rho, _, rho_ddot = self.rho(protocol.ansatz, t, protocol.tau, protocol.omega_i, protocol.omega_f)
            return float(omega_squared(rho, rho_ddot, protocol.omega_i))

        return direct

    def feasibility_threshold(self, ansatz: Ansatz, omega_i: float, omega_f: float,
                              n_samples: int = 10_001, rtol: float = 1e-10) -> float:
        """τ* mínimo con Ω² > 0 en toda la grilla, por bisección sobre τ"""
        if omega_i == omega_f:
            return 0.0

        def min_omega_squared(tau: float) -> float:
            times = np.linspace(0.0, tau, n_samples)
            rho, _, rho_ddot = self.rho(ansatz, times, tau, omega_i, omega_f)
            return float(np.min(omega_squared(rho, rho_ddot, omega_i)))

        hi = 1.0
        while min_omega_squared(hi) <= 0:
            hi *= 2.0
        lo = hi / 2.0
        while min_omega_squared(lo) > 0:
            hi, lo = lo, lo / 2.0
        tau_star = bisect(min_omega_squared, lo, hi, xtol=rtol * lo, maxiter=200)

        logger.info(f"τ* ({ansatz}) = {tau_star:.10g} para Ω_i={omega_i:.6g}, Ω_f={omega_f:.6g}")
        return float(tau_star)

    @staticmethod
    def compression_protocol(protocol: StaProtocol) -> StaProtocol:
        """
        Isentropa inversa: ρ̃(t) = ρ(τ−t)/ρ(τ), mismo Ω² recorrido al revés,
        con extremos intercambiados (Ω̃_i = Ω_f)
        """
        scale = protocol.rho[-1]
        detuning = protocol.detuning[::-1].copy() if protocol.detuning is not None else None
        return replace(
            protocol,
            omega_i=protocol.omega_f,
            omega_f=protocol.omega_i,
            rho=protocol.rho[::-1] / scale,
            rho_dot=-protocol.rho_dot[::-1] / scale,
            rho_ddot=protocol.rho_ddot[::-1] / scale,
            omega_squared=protocol.omega_squared[::-1].copy(),
            reversed=not protocol.reversed,
            detuning=detuning,
        )

    # ------------------------------------------------------------------
    # Inversión del protocolo de detuning
    # ------------------------------------------------------------------

    def dispersion(self, omega_c: float, omega_d: float, coupling: float, dispersion: Dispersion = "three_mode",
                   upper: Optional[float] = None,
                   validity_fraction: float = None) -> Tuple[Callable[[float], float], float, float]:
        """(f, lo, hi): rama monótona f(−Δ̄) y su bracket de inversión"""
        lo = self.config.detuning_bracket_low
        if dispersion == "three_mode":
            hi = self.config.detuning_bracket_factor * max(omega_c, omega_d, upper or 0.0)

            def f(x: float) -> float:
                return self.spectrum_service.lower_branch_frequency(x, omega_c, omega_d, coupling)

        elif dispersion == "two_mode":
            fraction = validity_fraction if validity_fraction is not None else self.config.two_mode_validity_fraction
            hi = fraction * omega_c * (1.0 - 1e-12)

            def f(x: float) -> float:
                params = self.two_mode_service.eliminate_c(x, omega_c, omega_d, coupling, fraction)
                return self.two_mode_service.two_mode_frequencies(params)[0]

        else:
            raise DomainError(f"Dispersión desconocida: {dispersion}")
        return f, lo, hi

    def detuning_protocol(self, protocol: StaProtocol, omega_c: float, omega_d: float, coupling: float,
                          dispersion: Dispersion = "three_mode",
                          validity_fraction: float = None) -> StaProtocol:
        """−Δ̄(t) con ω_A(−Δ̄(t)) = Ω(t) por bisección muestra a muestra"""
        if not protocol.feasible:
            raise InfeasibleProtocolError(
                "No se puede invertir un protocolo no factible",
                minimum=protocol.min_omega_squared,
                location=protocol.argmin_time,
            )
        try:
            f, lo, hi = self.dispersion(omega_c, omega_d, coupling, dispersion, validity_fraction=validity_fraction)
            f_lo, f_hi = f(lo), f(hi)
        except ValidityError as e:
            raise UnattainableFrequencyError(f"Rango de dos modos vacío: {e}") from e

        omegas = protocol.omega
        out_of_range = (omegas <= f_lo) | (omegas >= f_hi)
        if np.any(out_of_range):
            k = int(np.argmax(out_of_range))
            raise UnattainableFrequencyError(
                f"Ω(t={protocol.times[k]:.6g}) = {omegas[k]:.10g} fuera del rango alcanzable "
                f"({f_lo:.10g}, {f_hi:.10g}) de la rama ({dispersion})",
                omega=float(omegas[k]),
                low=f_lo,
                high=f_hi,
            )

        detuning = np.empty_like(omegas)
        worst = 0.0
        for k, target in enumerate(omegas):
            detuning[k] = bisect(lambda x: f(x) - target, lo, hi, xtol=1e-14, maxiter=200)
            worst = max(worst, abs(f(detuning[k]) - target))

        if worst > self.config.inversion_tol:
            logger.warning(f"[WARNING]  Residuo de inversión {worst:.3g} supera {self.config.inversion_tol:g}")
        logger.debug(f"Inversión de detuning: {len(omegas)} muestras, residuo máximo {worst:.3g}")
        return protocol.with_detuning(detuning)

    # ------------------------------------------------------------------
    # Diagnósticos
    # ------------------------------------------------------------------

    @staticmethod
    def mean_energy(protocol: StaProtocol, occupation: float = 0.0) -> MeanEnergy:
        """⟨H⟩ = (2n+1)/(4Ω_i)·(ρ̇² + Ω²ρ² + Ω_i²/ρ²)"""
        if occupation < 0:
            raise DomainError("La ocupación debe ser >= 0")
        rho = protocol.rho
        values = (2.0 * occupation + 1.0) / (4.0 * protocol.omega_i) * (
            protocol.rho_dot ** 2 + protocol.omega_squared * rho ** 2 + protocol.omega_i ** 2 / rho ** 2
        )
        return MeanEnergy(occupation=occupation, times=protocol.times, values=values)

    def _integrate(self, rhs, t_span, y0, t_eval, label: str):
        solution = solve_ivp(
            rhs, t_span, y0,
            method="DOP853",
            t_eval=t_eval,
            rtol=self.config.ode_rtol,
            atol=self.config.ode_atol,
        )
        if solution.status != 0:
            raise IntegrationError(f"Integración de {label} fallida: {solution.message}")
        return solution

    def fundamental_solutions(self, times: np.ndarray, omega: np.ndarray = None,
                              omega_squared_fn: Callable[[float], float] = None) -> FundamentalSolutions:
        """X, Y de ẍ + Ω²(t)x = 0, con Ω² interpolado por spline cúbico o dado analíticamente"""
        times = np.asarray(times, dtype=float)
        if omega_squared_fn is None:
            if omega is None:
                raise ValueError("Se requiere omega u omega_squared_fn")
            omega = np.asarray(omega, dtype=float)
            dt = float(np.min(np.diff(times)))
            period = 2.0 * np.pi / float(np.max(np.abs(omega)))
            if period / dt < SAMPLES_PER_PERIOD:
                logger.warning(
                    f"[WARNING]  Muestreo insuficiente: {period / dt:.1f} muestras por período "
                    f"(mínimo {SAMPLES_PER_PERIOD})"
                )
            omega_squared_fn = CubicSpline(times, omega ** 2)

        def rhs(t, y):
            w2 = omega_squared_fn(t)
            return [y[1], -w2 * y[0], y[3], -w2 * y[2]]

        solution = self._integrate(rhs, (times[0], times[-1]), [1.0, 0.0, 0.0, 1.0], times, "X, Y")
        x, x_dot, y, y_dot = solution.y
        return FundamentalSolutions(times=solution.t, x=x, x_dot=x_dot, y=y, y_dot=y_dot)

    def adiabaticity_parameter(self, times: np.ndarray, omega: np.ndarray) -> float:
        """Q* de Husimi a partir de muestras de Ω(t); Q* = 1 para evolución adiabática"""
        omega = np.asarray(omega, dtype=float)
        solutions = self.fundamental_solutions(times, omega=omega)
        return solutions.husimi_q_star(float(omega[0]), float(omega[-1]))

    def protocol_adiabaticity(self, protocol: StaProtocol) -> float:
        """Q* de un protocolo STA usando su Ω²(t) analítico"""
        solutions = self.fundamental_solutions(protocol.times,
                                               omega_squared_fn=self.omega_squared_function(protocol))
        return solutions.husimi_q_star(protocol.omega_i, protocol.omega_f)

    @staticmethod
    def linear_ramp(tau: float, omega_i: float, omega_f: float, n_samples: int = 2001) -> Tuple[np.ndarray, np.ndarray]:
        """Rampa de referencia Ω(t) = Ω_i + (Ω_f − Ω_i)t/τ"""
        times = np.linspace(0.0, tau, n_samples)
        return times, omega_i + (omega_f - omega_i) * times / tau

    def ermakov_lewis_invariant(self, protocol: StaProtocol, x0: float = 1.0, v0: float = 0.0) -> np.ndarray:
        """I(t) = ½[(x/ρ)²Ω_i² + (ρẋ − ρ̇x)²]/Ω_i a lo largo de una trayectoria clásica"""
        omega_squared_fn = self.omega_squared_function(protocol)

        def rhs(t, y):
            return [y[1], -omega_squared_fn(t) * y[0]]

        solution = self._integrate(rhs, (protocol.times[0], protocol.times[-1]), [x0, v0],
                                   protocol.times, "trayectoria clásica")
        x, v = solution.y
        rho, rho_dot = protocol.rho, protocol.rho_dot
        return 0.5 * ((x / rho) ** 2 * protocol.omega_i ** 2 + (rho * v - rho_dot * x) ** 2) / protocol.omega_i

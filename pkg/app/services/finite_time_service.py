"""
Servicio de tiempo finito: isocoras con termalización incompleta y ciclo límite
"""

import logging
import math

from app.core.config import Config
from app.core.errors import DegenerateMapError, NotAnEngineError
from app.models.cycle import CycleResult, FiniteCycleSpec, LimitCycleState, OttoCycleSpec
from app.processors.otto_algebra import cycle_from_endpoints, require_engine
from app.services.thermo_service import ThermoService

logger = logging.getLogger(__name__)


class FiniteTimeService:
    """Servicio para ciclos de Otto con isocoras de duración finita"""

    def __init__(self, thermo_service: ThermoService = None, config: Config = None):
        if thermo_service is None:
            raise ValueError("thermo_service es requerido - use build_services() para crear instancias")
        if config is None:
            raise ValueError("config es requerido - use build_services() para crear instancias")
        self.thermo_service = thermo_service
        self.config = config

    @staticmethod
    def isochore_relax(n_start: float, n_eq: float, gamma: float, tau: float) -> float:
        """n(τ) = n_eq + (n_start − n_eq)e^{−γτ}"""
        if gamma <= 0:
            raise ValueError("γ debe ser > 0")
        if tau < 0:
            raise ValueError("τ debe ser >= 0")
        return n_eq + (n_start - n_eq) * math.exp(-gamma * tau)

    @staticmethod
    def _factors(spec: FiniteCycleSpec):
        return math.exp(-spec.photon_rate * spec.tau_bc), math.exp(-spec.phonon_rate * spec.tau_da)

    def cycle_map(self, spec: FiniteCycleSpec, n_a: float) -> float:
        """Una vuelta del ciclo desde la esquina a (isentropas conservan la población)"""
        _, _, n_i, n_f = self.thermo_service.endpoints(spec.ideal)
        n_c = self.isochore_relax(n_a, n_f, spec.photon_rate, spec.tau_bc)
        return self.isochore_relax(n_c, n_i, spec.phonon_rate, spec.tau_da)

    def limit_cycle(self, spec: FiniteCycleSpec) -> LimitCycleState:
        """
        Punto fijo del mapa afín n_a → n_i + (n_f + (n_a − n_f)x − n_i)y en forma cerrada:
        n_a = [n_i(1 − y) + n_f y(1 − x)]/(1 − xy), con x = e^{−γτ_bc}, y = e^{−γ_m τ_da}
        """
        x, y = self._factors(spec)
        if x == 1.0 and y == 1.0:
            raise DegenerateMapError(
                "Mapa de ciclo igual a la identidad (τ_bc = τ_da = 0): no hay intercambio de calor",
                tau_bc=spec.tau_bc, tau_da=spec.tau_da,
            )

        _, _, n_i, n_f = self.thermo_service.endpoints(spec.ideal)
        n_a = (n_i * (1.0 - y) + n_f * y * (1.0 - x)) / (1.0 - x * y)
        n_c = n_f + (n_a - n_f) * x

        lifetime_exceeded = spec.tau_da > 1.0 / spec.ideal.baths.gamma_m
        if lifetime_exceeded:
            logger.warning(
                f"[WARNING]  τ_da = {spec.tau_da:.4g} supera la vida media de la corriente persistente "
                f"1/γ_m = {1.0 / spec.ideal.baths.gamma_m:.4g}: el condensado se compromete"
            )

        return LimitCycleState(
            n_a=n_a,
            n_b=n_a,
            n_c=n_c,
            n_d=n_c,
            converged=True,
            condensate_lifetime_exceeded=lifetime_exceeded,
        )

    def finite_cycle(self, spec: FiniteCycleSpec) -> CycleResult:
        """Energética con ocupaciones del ciclo límite; η coincide con el ciclo ideal"""
        omega_i, omega_f, _, _ = self.thermo_service.endpoints(spec.ideal)
        state = self.limit_cycle(spec)
        result = cycle_from_endpoints(omega_i, omega_f, state.n_a, state.n_c)
        return require_engine(result, label="ciclo de tiempo finito")

    def two_mode_finite_cycle(self, spec: FiniteCycleSpec) -> CycleResult:
        """Isocoras finitas sobre la rama inferior Ω_− del modelo de dos modos"""
        if spec.ideal.branch != "two_mode_lower":
            spec = spec.model_copy(update={"ideal": spec.ideal.model_copy(update={"branch": "two_mode_lower"})})
        return self.finite_cycle(spec)

    def nonadiabatic_otto(self, spec: OttoCycleSpec, q_star_expansion: float = 1.0,
                          q_star_compression: float = 1.0) -> CycleResult:
        """
        Ciclo con isentropas no adiabáticas parametrizadas por Q*: tras cada isentropa
        n → Q*(n + ½) − ½. Con Q* = 1 se recupera el ciclo ideal.
        """
        if q_star_expansion < 1.0 - 1e-9 or q_star_compression < 1.0 - 1e-9:
            raise ValueError("Q* debe ser >= 1")
        omega_i, omega_f, n_i, n_f = self.thermo_service.endpoints(spec)

        heat_in = omega_i * ((n_i + 0.5) - q_star_compression * (n_f + 0.5))
        heat_out = omega_f * ((n_f + 0.5) - q_star_expansion * (n_i + 0.5))
        work = heat_in + heat_out
        if not (work > 0 and heat_in > 0):
            raise NotAnEngineError(
                f"Ciclo no adiabático sin trabajo neto: W = {work:.6g}, Q_in = {heat_in:.6g}",
                result=None,
            )
        return CycleResult(
            work=work,
            heat_in=heat_in,
            heat_out=heat_out,
            efficiency=work / heat_in,
            omega_i=omega_i,
            omega_f=omega_f,
            n_i=n_i,
            n_f=n_f,
        )

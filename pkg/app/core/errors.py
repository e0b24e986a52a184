"""
Jerarquía de errores del motor polaritónico

Cada familia se traduce a un exit code determinístico en el CLI:
validación = 2, dominio físico = 3, numérico = 4.
"""

from typing import Any, Optional


class EngineError(Exception):
    """Error base del sistema"""

    exit_code: int = 1

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.context = context


class ConfigValidationError(EngineError):
    """Configuración inválida o incompleta"""

    exit_code = 2


# ---------------------------------------------------------------------------
# Dominio físico (exit 3)
# ---------------------------------------------------------------------------

class PhysicsDomainError(EngineError):
    """Parámetros fuera del dominio donde la física modelada aplica"""

    exit_code = 3


class NotAnEngineError(PhysicsDomainError):
    """El ciclo no entrega trabajo positivo (W ≤ 0)"""

    def __init__(self, message: str, result: Optional[Any] = None, **context: Any):
        super().__init__(message, **context)
        # El llamador puede inspeccionar los valores crudos del ciclo
        self.result = result


class InfeasibleProtocolError(PhysicsDomainError):
    """Protocolo STA con Ω(t)² ≤ 0 en algún punto"""

    def __init__(self, message: str, minimum: float, location: float, **context: Any):
        super().__init__(message, **context)
        self.minimum = minimum
        self.location = location


class ValidityError(PhysicsDomainError):
    """Fuera del régimen de validez de la eliminación adiabática"""


class RegimeError(PhysicsDomainError):
    """Fuera del régimen asintótico solicitado"""


class UnattainableFrequencyError(PhysicsDomainError):
    """Frecuencia fuera del rango alcanzable por la rama polaritónica"""


class DivergentOccupationError(PhysicsDomainError):
    """Factor de Bose divergente (ω ≤ 0 con T > 0)"""


class DegenerateMapError(PhysicsDomainError):
    """Mapa de ciclo límite igual a la identidad (sin intercambio de calor)"""


class DomainError(PhysicsDomainError):
    """Argumento fuera del intervalo de definición"""


# ---------------------------------------------------------------------------
# Numéricos (exit 4)
# ---------------------------------------------------------------------------

class NumericalError(EngineError):
    """Falla numérica del cálculo"""

    exit_code = 4


class ComplexRootError(NumericalError):
    """Argumento del acos de Cardano fuera de [-1, 1] más allá de la tolerancia"""


class DegenerateSpectrumError(NumericalError):
    """Dos ramas coinciden y los coeficientes de Hopfield son singulares"""


class SingularWeightError(NumericalError):
    """Frecuencia de rama coincide con una frecuencia desnuda con G̃ > 0"""


class IntegrationError(NumericalError):
    """El integrador adaptativo no completó la integración"""


class StabilityError(NumericalError):
    """Paso temporal viola la guarda dt·max(ω, γ) < 0.1"""


def exit_code_for(error: BaseException) -> int:
    """Exit code asociado a una excepción (pydantic ValidationError cuenta como validación)"""
    if isinstance(error, EngineError):
        return error.exit_code
    try:
        from pydantic import ValidationError
    except ImportError:  # pragma: no cover
        return 1
    if isinstance(error, ValidationError):
        return ConfigValidationError.exit_code
    return 1

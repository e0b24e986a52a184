"""
Configuración centralizada del sistema
"""

import os
import json
import logging
from pathlib import Path
from dataclasses import dataclass, fields
from typing import Any, Dict

logger = logging.getLogger(__name__)


@dataclass
class Config:
    """Configuración de runtime del motor polaritónico (tolerancias, guardas y salida)"""

    # Salida
    output_dir: str = "output"
    output_format: str = "csv"  # csv | csv+svg
    csv_precision: int = 17

    # Física por defecto
    use_dressed_frequencies: bool = False  # ω' ≈ ω salvo que se pida lo contrario
    photon_occupation: float = 0.0  # n_a por defecto de todos los subcomandos; suprimido a frecuencias ópticas

    # Espectro
    degeneracy_tol: float = 1e-10
    cardano_clamp_tol: float = 1e-9
    singular_weight_tol: float = 1e-12
    asymptotic_guard_factor: float = 2.0

    # Régimen de motor (solo warnings) y guardas de eficiencia asintótica
    engine_large_factor: float = 5.0
    engine_small_fraction: float = 0.1

    # Eliminación adiabática
    two_mode_validity_fraction: float = 0.2

    # Inversión de detuning
    detuning_bracket_low: float = 1e-6
    detuning_bracket_factor: float = 1e3
    inversion_tol: float = 1e-9

    # Integración ODE (Q*, invariante de Ermakov-Lewis)
    ode_rtol: float = 1e-11
    ode_atol: float = 1e-12

    # Langevin
    langevin_block_size: int = 1024
    stability_limit: float = 0.1
    default_seed: int = 20231115

    # Sweeps
    max_workers: int = 4

    @classmethod
    def from_env(cls) -> "Config":
        """Crea configuración desde variables de entorno y archivos .prefs.json"""
        # 0. Cargar archivo .env si existe
        try:
            from dotenv import load_dotenv
            load_dotenv()
        except ImportError:
            pass  # dotenv no instalado, continuar

        config = cls()

        # 1. Cargar desde .prefs.json si existe
        prefs_file = Path(".prefs.json")
        if prefs_file.exists():
            try:
                with open(prefs_file, 'r') as f:
                    prefs = json.load(f)
                config.apply_overrides(prefs)
                logger.info("📄 Configuración cargada desde .prefs.json")
            except Exception as e:
                logger.warning(f"[WARNING]  Error leyendo .prefs.json: {e}")

        # 2. Variables de entorno tienen prioridad (sobrescriben .prefs.json)
        env_overrides = {}
        for f in fields(cls):
            value = os.getenv(f"ENGINE_{f.name.upper()}")
            if value is not None:
                env_overrides[f.name] = value
        config.apply_overrides(env_overrides)

        return config

    def apply_overrides(self, overrides: Dict[str, Any]) -> None:
        """Aplica overrides con conversión al tipo del campo; ignora claves desconocidas con warning"""
        known = {f.name: f for f in fields(self)}
        for key, raw in overrides.items():
            if key not in known:
                logger.warning(f"[WARNING]  Clave de configuración desconocida ignorada: {key}")
                continue
            current = getattr(self, key)
            if isinstance(current, bool):
                value = raw if isinstance(raw, bool) else str(raw).strip().lower() in ("1", "true", "yes", "si")
            else:
                value = type(current)(raw)
            setattr(self, key, value)

    def validate(self) -> None:
        """Valida que la configuración sea válida"""
        positive = [
            "degeneracy_tol", "cardano_clamp_tol", "singular_weight_tol",
            "asymptotic_guard_factor", "engine_large_factor", "engine_small_fraction",
            "two_mode_validity_fraction", "detuning_bracket_low", "detuning_bracket_factor",
            "inversion_tol", "ode_rtol", "ode_atol", "stability_limit",
        ]
        for name in positive:
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} debe ser > 0")

        if self.langevin_block_size < 1:
            raise ValueError("langevin_block_size debe ser >= 1")
        if self.max_workers < 1:
            raise ValueError("max_workers debe ser >= 1")
        if self.output_format not in ("csv", "csv+svg"):
            raise ValueError(f"output_format inválido: {self.output_format}")
        if self.photon_occupation < 0:
            raise ValueError("photon_occupation debe ser >= 0")

        if self.stability_limit > 0.1:
            logger.warning("[WARNING]  stability_limit > 0.1 - Euler-Maruyama puede sesgar las estadísticas")

"""
Servicio para carga y validación de la configuración de corrida
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import ValidationError

from app.core.config import Config
from app.core.errors import ConfigValidationError
from app.models.run_config import SUBCOMMAND_BLOCKS, RunConfig, present_blocks

logger = logging.getLogger(__name__)


class ConfigService:
    """Servicio para configuración de corrida: JSON → RunConfig, bloques por subcomando y hash"""

    def __init__(self, config: Config = None):
        if config is None:
            raise ValueError("config es requerido - use build_services() para crear instancias")
        self.config = config

    def load_run_config(self, path: Optional[Union[str, Path]], units: str = "si",
                        subcommand: Optional[str] = None) -> RunConfig:
        """
        Lee y valida un JSON de corrida; `units` fija la unidad de los campos de tasa sin tag

        Raises:
            ConfigValidationError: archivo ilegible, JSON inválido o bloques incorrectos
            pydantic.ValidationError: claves desconocidas o valores fuera de dominio
        """
        data: Dict[str, Any] = {}
        if path is not None:
            config_path = Path(path)
            if not config_path.exists():
                raise ConfigValidationError(f"No existe el archivo de configuración: {config_path}")
            try:
                with open(config_path, "r", encoding="utf-8") as f:
                    data = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigValidationError(f"JSON inválido en {config_path}: {e}") from e
            if not isinstance(data, dict):
                raise ConfigValidationError("La configuración debe ser un objeto JSON")
        return self.parse_run_config(data, units=units, subcommand=subcommand)

    def parse_run_config(self, data: Dict[str, Any], units: str = "si",
                         subcommand: Optional[str] = None) -> RunConfig:
        if units not in ("si", "gamma0"):
            raise ConfigValidationError(f"--units inválido: {units}")
        run_config = RunConfig.model_validate(data, context={"units": units})
        if subcommand is not None:
            self.check_blocks(run_config, subcommand)
        logger.debug(f"RunConfig válida para '{subcommand}' (bloques: {sorted(present_blocks(run_config))})")
        return run_config

    @staticmethod
    def check_blocks(run_config: RunConfig, subcommand: str) -> None:
        """Exactamente los bloques requeridos por el subcomando (más los opcionales permitidos)"""
        if subcommand not in SUBCOMMAND_BLOCKS:
            raise ConfigValidationError(f"Subcomando sin bloques definidos: {subcommand}")
        required, optional = SUBCOMMAND_BLOCKS[subcommand]
        present = present_blocks(run_config)
        missing = required - present
        unexpected = present - required - optional
        if missing:
            raise ConfigValidationError(
                f"Faltan bloques para '{subcommand}': {sorted(missing)}", missing=sorted(missing)
            )
        if unexpected:
            raise ConfigValidationError(
                f"Bloques no usados por '{subcommand}': {sorted(unexpected)}", unexpected=sorted(unexpected)
            )

    @staticmethod
    def config_hash(run_config: RunConfig, **extra: Any) -> str:
        """sha256 del JSON canónico (claves ordenadas) de la configuración resuelta"""
        payload = run_config.model_dump(mode="json")
        payload.update(extra)
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    @staticmethod
    def schema() -> Dict[str, Any]:
        return RunConfig.model_json_schema()

    @staticmethod
    def describe_error(error: ValidationError) -> str:
        """Mensaje legible de un ValidationError (una línea por campo)"""
        lines = []
        for item in error.errors():
            location = ".".join(str(part) for part in item["loc"]) or "<raíz>"
            lines.append(f"{location}: {item['msg']}")
        return "; ".join(lines)

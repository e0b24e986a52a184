"""
Servicio para escritura y lectura de artefactos CSV
"""

import logging
from pathlib import Path
from typing import Dict, Optional, Union

import pandas as pd

from app import __version__
from app.core.config import Config
from app.core.errors import ConfigValidationError

logger = logging.getLogger(__name__)


class FileService:
    """Servicio para exportación de resultados con encabezado de metadatos"""

    def __init__(self, config: Config = None):
        if config is None:
            raise ValueError("config es requerido - use build_services() para crear instancias")
        self.config = config

    @staticmethod
    def ensure_dir(directory: Union[str, Path]) -> Path:
        path = Path(directory)
        path.mkdir(parents=True, exist_ok=True)
        return path

    @staticmethod
    def header_line(metadata: Optional[Dict[str, object]] = None) -> str:
        """'# config_hash=<sha256> version=<v> k=v ...' con claves en orden estable"""
        metadata = dict(metadata or {})
        config_hash = metadata.pop("config_hash", "none")
        parts = [f"config_hash={config_hash}", f"version={__version__}"]
        parts += [f"{key}={metadata[key]}" for key in sorted(metadata)]
        return "# " + " ".join(parts)

    def write_csv(self, frame: pd.DataFrame, path: Union[str, Path],
                  metadata: Optional[Dict[str, object]] = None) -> Path:
        """CSV con coma, punto decimal, floats de 17 dígitos significativos y una línea '#' de metadatos"""
        path = Path(path)
        self.ensure_dir(path.parent)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(self.header_line(metadata) + "\n")
            frame.to_csv(f, index=False, float_format=f"%.{self.config.csv_precision}g", lineterminator="\n")
        logger.info(f"[SUCCESS] CSV guardado: {path} ({len(frame)} filas)")
        return path

    @staticmethod
    def read_csv(path: Union[str, Path]) -> pd.DataFrame:
        """Lee un CSV emitido por write_csv (ignora la línea de metadatos)"""
        path = Path(path)
        if not path.exists():
            raise ConfigValidationError(f"No existe el CSV: {path}")
        try:
            frame = pd.read_csv(path, comment="#")
        except pd.errors.EmptyDataError as e:
            raise ConfigValidationError(f"CSV vacío: {path}") from e
        return frame

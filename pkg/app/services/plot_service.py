"""
Servicio de gráficos SVG determinísticos a partir de los CSV emitidos
"""

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from app.core.config import Config  # noqa: E402
from app.core.errors import ConfigValidationError  # noqa: E402
from app.services.file_service import FileService  # noqa: E402

logger = logging.getLogger(__name__)

SVG_RC = {
    "svg.hashsalt": "oam-polariton-engine",
    "svg.fonttype": "none",
    "figure.figsize": (6.4, 4.8),
    "figure.dpi": 100,
}


class PlotService:
    """Servicio para gráficos de líneas y mapas de calor en SVG byte-comparables"""

    def __init__(self, file_service: FileService = None, config: Config = None):
        if file_service is None:
            raise ValueError("file_service es requerido - use build_services() para crear instancias")
        if config is None:
            raise ValueError("config es requerido - use build_services() para crear instancias")
        self.file_service = file_service
        self.config = config

    @staticmethod
    def _require_columns(frame, columns: Sequence[str], source: Path) -> None:
        missing = [c for c in columns if c not in frame.columns]
        if missing:
            raise ConfigValidationError(
                f"Columnas faltantes {missing} en {source}; columnas disponibles: {list(frame.columns)}",
                missing=missing,
                available=list(frame.columns),
            )

    def emit_plot(self, csv_path: Union[str, Path], x: str, y: Union[str, List[str]], z: Optional[str] = None,
                  out_path: Optional[Union[str, Path]] = None, title: Optional[str] = None) -> Path:
        """
        Línea(s) y(x) o mapa de calor z(x, y) desde un CSV

        Returns:
            Path: ruta del SVG escrito (no se escribe nada si el CSV está vacío)
        """
        csv_path = Path(csv_path)
        frame = self.file_service.read_csv(csv_path)
        if frame.empty:
            raise ConfigValidationError(f"CSV vacío: {csv_path}")
        ys = [y] if isinstance(y, str) else list(y)
        if z is not None and len(ys) != 1:
            raise ConfigValidationError("El mapa de calor requiere exactamente una columna y")
        self._require_columns(frame, [x, *ys, *([z] if z else [])], csv_path)

        out_path = Path(out_path) if out_path else csv_path.with_suffix(".svg")
        with plt.rc_context(SVG_RC):
            fig, ax = plt.subplots()
            try:
                if z is None:
                    for column in ys:
                        ax.plot(frame[x].to_numpy(), frame[column].to_numpy(), label=column)
                    ax.set_ylabel(", ".join(ys))
                    if len(ys) > 1:
                        ax.legend()
                else:
                    grid = frame.pivot_table(index=ys[0], columns=x, values=z, sort=True)
                    mesh = ax.pcolormesh(
                        grid.columns.to_numpy(dtype=float),
                        grid.index.to_numpy(dtype=float),
                        np.ma.masked_invalid(grid.to_numpy(dtype=float)),
                        shading="auto",
                    )
                    fig.colorbar(mesh, ax=ax, label=z)
                    ax.set_ylabel(ys[0])
                ax.set_xlabel(x)
                if title:
                    ax.set_title(title)
                self.file_service.ensure_dir(out_path.parent)
                fig.savefig(out_path, format="svg", metadata={"Date": None})
            finally:
                plt.close(fig)

        logger.info(f"[SUCCESS] SVG guardado: {out_path}")
        return out_path

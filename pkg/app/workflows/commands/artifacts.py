"""
Contexto de corrida y emisión de artefactos (CSV y SVG opcional)
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import pandas as pd

from app.core.services import Services
from app.core.units import lambda_parameters
from app.models.cycle import BathSpec
from app.models.run_config import RunConfig


@dataclass
class RunContext:
    """Lo que todo comando necesita además de los servicios"""
    run_config: RunConfig
    out_dir: Path
    output_format: str = "csv"
    seed: Optional[int] = None
    metadata: Dict[str, object] = field(default_factory=dict)

    def lambda_parameters(self, use_dressed: bool) -> Tuple[float, float, float]:
        return lambda_parameters(self.run_config.physical, use_dressed)

    def baths(self, n_a: float = 0.0) -> BathSpec:
        return BathSpec.from_physical(self.run_config.physical, n_a=n_a)


def emit(services: Services, context: RunContext, frame: pd.DataFrame, filename: str,
         plot: Optional[Dict[str, object]] = None) -> List[Path]:
    """Escribe el CSV y, con formato csv+svg, el gráfico asociado"""
    written = [services.file_service.write_csv(frame, context.out_dir / filename, context.metadata)]
    if context.output_format == "csv+svg" and plot is not None:
        written.append(services.plot_service.emit_plot(written[0], **plot))
    return written

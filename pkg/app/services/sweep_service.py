"""
Servicio de barridos de parámetros sobre el ciclo de Otto (ideal o de tiempo finito)
"""

import asyncio
import itertools
import logging
import math
from typing import Dict, List

import numpy as np
import pandas as pd
from pydantic import ValidationError

from app.core.config import Config
from app.core.errors import ConfigValidationError, NotAnEngineError, PhysicsDomainError
from app.core.units import lambda_parameters
from app.models.cycle import BathSpec, FiniteCycleSpec, OttoCycleSpec
from app.models.run_config import AxisSpec, RunConfig, SweepGrid
from app.services.finite_time_service import FiniteTimeService
from app.services.thermo_service import ThermoService

logger = logging.getLogger(__name__)

FINITE_AXES = {"tau_bc", "tau_da", "tau"}
RESULT_COLUMNS = ["W", "Q_in", "Q_out", "eta", "Omega_i", "Omega_f", "n_i", "n_f"]


class SweepService:
    """Servicio para barridos 1D/2D con evaluación concurrente y orden de grilla determinístico"""

    def __init__(self, thermo_service: ThermoService = None, finite_time_service: FiniteTimeService = None,
                 config: Config = None):
        if thermo_service is None:
            raise ValueError("thermo_service es requerido - use build_services() para crear instancias")
        if finite_time_service is None:
            raise ValueError("finite_time_service es requerido - use build_services() para crear instancias")
        if config is None:
            raise ValueError("config es requerido - use build_services() para crear instancias")
        self.thermo_service = thermo_service
        self.finite_time_service = finite_time_service
        self.config = config

    @staticmethod
    def axis_values(axis: AxisSpec) -> np.ndarray:
        """Valores del eje; oam se redondea a enteros únicos"""
        values = axis.values()
        if axis.name == "oam":
            values = np.unique(np.rint(values).astype(int))
            if values[0] < 1:
                raise ConfigValidationError("El eje oam requiere valores >= 1")
        return values

    def grid_points(self, grid: SweepGrid) -> List[Dict[str, float]]:
        """Producto cartesiano en orden de grilla (primer eje externo)"""
        axes = [(axis.name, self.axis_values(axis)) for axis in grid.axes]
        names = [name for name, _ in axes]
        return [dict(zip(names, combo)) for combo in itertools.product(*(values for _, values in axes))]

    def _build_specs(self, run_config: RunConfig, point: Dict[str, float]):
        physical = run_config.physical
        if "oam" in point:
            physical = physical.model_copy(update={"oam": int(point["oam"])})
        omega_c, omega_d, coupling = lambda_parameters(physical, self.config.use_dressed_frequencies)
        coupling = float(point.get("coupling", coupling))

        otto = run_config.otto
        if "detuning_i" in point:
            detuning_i = float(point["detuning_i"])
        elif otto.detuning_i is not None:
            detuning_i = otto.detuning_i
        else:
            detuning_i = otto.detuning_i_factor * omega_c

        ideal = OttoCycleSpec(
            detuning_i=detuning_i,
            detuning_f=float(point.get("detuning_f", otto.detuning_f)),
            branch=otto.branch,
            omega_c=omega_c,
            omega_d=omega_d,
            coupling=coupling,
            baths=BathSpec.from_physical(physical, n_a=self.config.photon_occupation if otto.n_a is None else otto.n_a),
            validity_fraction=otto.validity_fraction,
        )
        if not (FINITE_AXES & point.keys()) and run_config.finite is None:
            return ideal, None

        finite = run_config.finite
        if finite is None:
            raise ConfigValidationError("Los ejes tau_bc/tau_da/tau requieren el bloque 'finite'")
        tau_bc = point.get("tau_bc", point.get("tau", finite.tau_bc))
        tau_da = point.get("tau_da", point.get("tau", finite.tau_da))
        return ideal, FiniteCycleSpec(
            ideal=ideal,
            tau_bc=float(tau_bc),
            tau_da=float(tau_da),
            gamma_photon_side=finite.gamma_photon_side,
            gamma_phonon_side=finite.gamma_phonon_side,
        )

    def evaluate_point(self, run_config: RunConfig, point: Dict[str, float]) -> Dict[str, object]:
        """Una fila del barrido: valores de los ejes, energética y estado"""
        row: Dict[str, object] = {name: (int(v) if name == "oam" else float(v)) for name, v in point.items()}
        try:
            ideal, finite = self._build_specs(run_config, point)
            if finite is not None:
                result = self.finite_time_service.finite_cycle(finite)
            else:
                result = self.thermo_service.ideal_otto(ideal)
            row.update(result.to_row())
            row["status"] = "ok"
        except NotAnEngineError as e:
            values = e.result.to_row() if e.result is not None else {}
            row.update({column: values.get(column, math.nan) for column in RESULT_COLUMNS})
            row["status"] = "not_engine"
        except (PhysicsDomainError, ValidationError) as e:
            logger.debug(f"Punto {point} fuera de dominio: {e}")
            row.update({column: math.nan for column in RESULT_COLUMNS})
            row["status"] = type(e).__name__
        return row

    async def run(self, run_config: RunConfig) -> pd.DataFrame:
        """Evalúa la grilla en hilos (hasta max_workers a la vez) y conserva el orden de grilla"""
        if run_config.sweep is None or run_config.otto is None:
            raise ConfigValidationError("El barrido requiere los bloques 'otto' y 'sweep'")
        points = self.grid_points(run_config.sweep)
        semaphore = asyncio.Semaphore(self.config.max_workers)

        async def evaluate(point: Dict[str, float]) -> Dict[str, object]:
            async with semaphore:
                return await asyncio.to_thread(self.evaluate_point, run_config, point)

        rows = await asyncio.gather(*(evaluate(p) for p in points))
        failed = sum(1 for r in rows if r["status"] != "ok")
        logger.info(f"Barrido: {len(rows)} puntos ({len(rows) - failed} motores, {failed} fuera de régimen)")
        return pd.DataFrame(rows)

"""
Cycle Commands
Comandos del ciclo de Otto: ideal, barridos, tiempo finito y modelo de dos modos
"""

import math
from typing import Any, Dict

import pandas as pd

from app.core.errors import RegimeError
from app.core.services import Services
from app.models.cycle import FiniteCycleSpec, OttoCycleSpec
from app.workflows.commands.artifacts import RunContext, emit


class CycleCommands:
    """Comandos `otto`, `sweep`, `finite` y `twomode`"""

    def __init__(self, services: Services):
        self.services = services

    def _otto_spec(self, context: RunContext) -> OttoCycleSpec:
        block = context.run_config.otto
        omega_c, omega_d, coupling = context.lambda_parameters(self.services.config.use_dressed_frequencies)
        detuning_i = block.detuning_i if block.detuning_i is not None else block.detuning_i_factor * omega_c
        return OttoCycleSpec(
            detuning_i=detuning_i,
            detuning_f=block.detuning_f,
            branch=block.branch,
            omega_c=omega_c,
            omega_d=omega_d,
            coupling=coupling,
            baths=context.baths(n_a=self.services.config.photon_occupation if block.n_a is None else block.n_a),
            validity_fraction=block.validity_fraction,
        )

    def run_otto(self, context: RunContext) -> Dict[str, Any]:
        """Ciclo ideal; NotAnEngineError se propaga (exit 3)"""
        spec = self._otto_spec(context)
        result = self.services.thermo_service.ideal_otto(spec)

        asymptotic = math.nan
        if spec.branch == "A":
            try:
                asymptotic = self.services.thermo_service.asymptotic_efficiency(spec)
            except RegimeError:
                pass

        row = {
            "detuning_i": spec.detuning_i,
            "detuning_f": spec.detuning_f,
            "omega_c": spec.omega_c,
            "omega_d": spec.omega_d,
            "G": spec.coupling,
            **result.to_row(),
            "eta_asymptotic": asymptotic,
        }
        files = emit(self.services, context, pd.DataFrame([row]), "otto.csv")
        return {"files": files, "summary": {"W": result.work, "eta": result.efficiency}}

    async def run_sweep(self, context: RunContext) -> Dict[str, Any]:
        """Barrido 1D/2D; filas en orden de grilla"""
        frame = await self.services.sweep_service.run(context.run_config)
        names = context.run_config.sweep.names
        plot = {"x": names[0], "y": "eta", "title": "Eficiencia del ciclo"}
        if len(names) == 2:
            plot = {"x": names[0], "y": names[1], "z": "eta", "title": "Eficiencia del ciclo"}
        files = emit(self.services, context, frame, "sweep.csv", plot=plot)
        return {"files": files, "summary": {"points": len(frame), "engines": int((frame["status"] == "ok").sum())}}

    def run_finite(self, context: RunContext) -> Dict[str, Any]:
        """Ciclo límite con isocoras finitas y comparación con el ideal"""
        ideal = self._otto_spec(context)
        block = context.run_config.finite
        spec = FiniteCycleSpec(
            ideal=ideal,
            tau_bc=block.tau_bc,
            tau_da=block.tau_da,
            gamma_photon_side=block.gamma_photon_side,
            gamma_phonon_side=block.gamma_phonon_side,
        )
        state = self.services.finite_time_service.limit_cycle(spec)
        result = self.services.finite_time_service.finite_cycle(spec)
        reference = self.services.thermo_service.ideal_otto(ideal)

        row = {
            "tau_bc": spec.tau_bc,
            "tau_da": spec.tau_da,
            "n_a": state.n_a,
            "n_b": state.n_b,
            "n_c": state.n_c,
            "n_d": state.n_d,
            **result.to_row(),
            "W_ideal": reference.work,
            "eta_ideal": reference.efficiency,
            "lifetime_exceeded": int(state.condensate_lifetime_exceeded),
        }
        files = emit(self.services, context, pd.DataFrame([row]), "finite.csv")
        return {"files": files, "summary": {"W": result.work, "eta": result.efficiency}}

    def run_twomode(self, context: RunContext) -> Dict[str, Any]:
        """Tabla Ω_±(−Δ̄) y superficie η(−Δ̄_f, G̃)"""
        block = context.run_config.twomode
        omega_c, omega_d, coupling = context.lambda_parameters(self.services.config.use_dressed_frequencies)
        two_mode = self.services.two_mode_service

        frequencies = two_mode.frequency_table(
            block.detuning.values(), omega_c, omega_d, coupling, block.validity_fraction
        )
        efficiency = two_mode.efficiency_grid(
            block.detuning_i, block.detuning.values(), block.coupling.values(),
            omega_c, omega_d, block.validity_fraction,
        )
        files = emit(
            self.services, context, frequencies, "twomode_frequencies.csv",
            plot={"x": "detuning", "y": ["Omega_minus", "Omega_plus"], "title": "Frecuencias de dos modos"},
        )
        files += emit(
            self.services, context, efficiency, "twomode_efficiency.csv",
            plot={"x": "detuning_f", "y": "G", "z": "eta", "title": "Eficiencia de dos modos"},
        )
        return {"files": files, "summary": {"omega_c": omega_c, "omega_d": omega_d}}

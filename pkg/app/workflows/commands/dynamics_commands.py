"""
Dynamics Commands
Comandos dinámicos: protocolos STA de las isentropas y ensambles de Langevin
"""

import math
from pathlib import Path
from typing import Any, Dict

import numpy as np
import pandas as pd

from app.core.services import Services
from app.models.polariton import CouplingMatrix
from app.models.stochastic import FrequencySchedule, NoiseSpec
from app.workflows.commands.artifacts import RunContext, emit


class DynamicsCommands:
    """Comandos `sta` y `langevin`"""

    def __init__(self, services: Services):
        self.services = services

    # ------------------------------------------------------------------
    # STA
    # ------------------------------------------------------------------

    def _sta_endpoints(self, context: RunContext, omega_c: float, omega_d: float, coupling: float):
        block = context.run_config.sta
        if block.omega_i is not None:
            return block.omega_i, block.omega_f
        f, _, _ = self.services.sta_service.dispersion(
            omega_c, omega_d, coupling, block.dispersion, validity_fraction=block.validity_fraction
        )
        return f(block.detuning_i), f(block.detuning_f)

    def run_sta(self, context: RunContext) -> Dict[str, Any]:
        """Protocolo de expansión Ω(t), −Δ̄(t) opcional, Q* y τ*"""
        block = context.run_config.sta
        sta = self.services.sta_service
        omega_c, omega_d, coupling = context.lambda_parameters(self.services.config.use_dressed_frequencies)
        omega_i, omega_f = self._sta_endpoints(context, omega_c, omega_d, coupling)

        protocol = sta.omega_protocol(block.ansatz, block.tau, omega_i, omega_f, block.n_samples)
        if block.invert_detuning:
            protocol = sta.detuning_protocol(
                protocol, omega_c, omega_d, coupling,
                dispersion=block.dispersion, validity_fraction=block.validity_fraction,
            )
        q_star = sta.protocol_adiabaticity(protocol)
        tau_star = sta.feasibility_threshold(block.ansatz, omega_i, omega_f)

        summary = {
            "ansatz": block.ansatz,
            "tau": block.tau,
            "omega_i": omega_i,
            "omega_f": omega_f,
            "feasible": int(protocol.feasible),
            "min_omega_squared": protocol.min_omega_squared,
            "q_star": q_star,
            "tau_star": tau_star,
        }
        frame = protocol.to_frame()
        y_columns = ["omega", "detuning"] if protocol.detuning is not None else ["omega"]
        files = emit(
            self.services, context, frame, "sta.csv",
            plot={"x": "t", "y": y_columns, "title": f"Protocolo STA ({block.ansatz})"},
        )
        files += emit(self.services, context, pd.DataFrame([summary]), "sta_summary.csv")
        return {"files": files, "summary": summary}

    # ------------------------------------------------------------------
    # Langevin
    # ------------------------------------------------------------------

    def _seed(self, context: RunContext) -> int:
        block = context.run_config.langevin
        if context.seed is not None:
            return context.seed
        if block.seed is not None:
            return block.seed
        return self.services.config.default_seed

    def run_langevin(self, context: RunContext) -> Dict[str, Any]:
        """Ensamble estocástico con ocupaciones, calor y trabajo (más errores estándar)"""
        block = context.run_config.langevin
        omega_c, omega_d, coupling = context.lambda_parameters(self.services.config.use_dressed_frequencies)
        baths = context.baths(n_a=self.services.config.photon_occupation)
        temperature = baths.t_phonon if block.bath == "phonon" else baths.t_photon
        bare = self.services.thermo_service.bare_occupations((omega_c, omega_d), temperature, baths)
        langevin = self.services.langevin_service
        seed = self._seed(context)
        options = {
            "record_every": block.record_every,
            "method": block.method,
            "initial_occupation": block.initial_occupation,
        }

        if block.mode == "bare":
            occupations = block.occupations if block.occupations is not None else list(bare)
            noise = NoiseSpec(
                occupations=occupations,
                damping=[baths.gamma0, baths.gamma_m, baths.gamma_m],
                seed=seed,
                labels=["a", "c", "d"],
            )
            frequencies = [block.detuning, omega_c, omega_d]
            if block.schedule_file:
                frequencies[0] = FrequencySchedule.from_csv(Path(block.schedule_file))
            ensemble = langevin.simulate_bare(noise, frequencies, block.horizon, block.dt, block.n_traj, **options)
        else:
            spectrum = self.services.spectrum_service.polariton_spectrum(
                CouplingMatrix(detuning=block.detuning, omega_c=omega_c, omega_d=omega_d, coupling=coupling)
            )
            n_eff = (
                block.occupations[0] if block.occupations
                else langevin.effective_occupation(spectrum, bare, "A")
            )
            gamma_eff = block.gamma_eff or langevin.effective_damping(
                spectrum, "A", gamma0=baths.gamma0, gamma_m=baths.gamma_m
            )
            frequency = (
                FrequencySchedule.from_csv(Path(block.schedule_file)) if block.schedule_file else spectrum.omega_A
            )
            ensemble = langevin.simulate_polariton(
                frequency, gamma_eff, n_eff, block.horizon, block.dt, block.n_traj, seed=seed, **options
            )

        frame = ensemble.to_frame()
        rates = langevin.heat_work_rates(ensemble)
        for column in ("dW_dt", "dW_dt_sem", "dQ_dt", "dQ_dt_sem"):
            frame[column] = np.concatenate([[math.nan], rates[column].to_numpy()])

        label = ensemble.labels[0]
        files = emit(
            self.services, context, frame, "langevin.csv",
            plot={"x": "t", "y": f"n_{label}", "title": "Ocupación media del ensamble"},
        )
        summary = {
            "n_traj": ensemble.n_traj,
            "seed": seed,
            f"n_{label}_final": float(ensemble.occupation_mean[-1, 0]),
            "closure_final": float(ensemble.closure_mean[-1]),
        }
        return {"files": files, "summary": summary}

"""
Spectrum Commands
Comandos de espectro polaritónico: curvas de frecuencia y pesos de Hopfield
"""

from typing import Any, Dict

from app.core.services import Services
from app.models.polariton import BRANCH_ORDER, MODE_ORDER
from app.workflows.commands.artifacts import RunContext, emit


class SpectrumCommands:
    """Comandos `spectrum` y `hopfield`"""

    def __init__(self, services: Services):
        """
        Constructor con dependency injection

        Args:
            services: Container de servicios DI
        """
        self.services = services

    def _sweep(self, context: RunContext):
        block = context.run_config.spectrum
        omega_c, omega_d, coupling = context.lambda_parameters(self.services.config.use_dressed_frequencies)
        frame = self.services.spectrum_service.detuning_sweep(
            block.detuning.values(), omega_c, omega_d, coupling, include_bare=block.include_bare
        )
        return frame, (omega_c, omega_d, coupling)

    def run_spectrum(self, context: RunContext) -> Dict[str, Any]:
        """Frecuencias de las ramas A, C, B, sus coeficientes de Hopfield X_k y las líneas desnudas"""
        frame, (omega_c, omega_d, coupling) = self._sweep(context)
        curves = [f"omega_{b}" for b in BRANCH_ORDER]
        if context.run_config.spectrum.include_bare:
            curves += ["bare_a", "bare_c", "bare_d"]
        weights = [f"X_{m}_{b}" for b in BRANCH_ORDER for m in MODE_ORDER]
        columns = ["detuning"] + curves[:3] + weights + curves[3:]
        files = emit(
            self.services, context, frame[columns], "spectrum.csv",
            plot={"x": "detuning", "y": curves, "title": "Frecuencias polaritónicas (γ0)"},
        )
        return {
            "files": files,
            "summary": {"omega_c": omega_c, "omega_d": omega_d, "G": coupling, "points": len(frame)},
        }

    def run_hopfield(self, context: RunContext) -> Dict[str, Any]:
        """Coeficientes de Hopfield al cuadrado |X_k|² por rama"""
        frame, _ = self._sweep(context)
        table = frame[["detuning"]].copy()
        for branch in BRANCH_ORDER:
            for mode in MODE_ORDER:
                table[f"X2_{mode}_{branch}"] = frame[f"X_{mode}_{branch}"] ** 2
        files = emit(
            self.services, context, table, "hopfield.csv",
            plot={"x": "detuning", "y": [f"X2_{m}_A" for m in MODE_ORDER], "title": "Contenido de la rama A"},
        )
        return {"files": files, "summary": {"points": len(table)}}

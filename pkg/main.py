#!/usr/bin/env python3
"""
OAM Polariton Engine
Simulador del motor de Otto polaritónico en un condensado anular acoplado a una cavidad.

Esta aplicación permite explorar interactivamente:
- El espectro de las ramas polaritónicas A, C, B
- El ciclo de Otto ideal entre dos detunings
- Cualquier subcomando del CLI a partir de un JSON de configuración
"""

import logging
import shlex

from dotenv import load_dotenv

# Cargar variables de entorno desde .env
load_dotenv()

# Configurar logging silencioso ANTES de importar otros módulos
from app.utils.logging_config import setup_quiet_logging  # noqa: E402
setup_quiet_logging()

from app.core.config import Config  # noqa: E402
from app.core.errors import EngineError  # noqa: E402
from app.core.services import Services, build_services  # noqa: E402
from app.core.units import lambda_parameters  # noqa: E402
from app.models.cycle import BathSpec, OttoCycleSpec  # noqa: E402
from app.models.physical import PhysicalConfig  # noqa: E402
from app.models.polariton import BRANCH_ORDER, CouplingMatrix  # noqa: E402
from scripts.engine_cli import run as run_cli  # noqa: E402

logger = logging.getLogger(__name__)


class PolaritonEngineInteractive:
    """
    Aplicación interactiva sobre los mismos servicios que el CLI

    IMPORTANTE: Esta es la interfaz INTERACTIVA que requiere input del usuario.
    Para corridas reproducibles usar: python scripts/engine_cli.py
    """

    def __init__(self, services: Services):
        """
        Constructor con Dependency Injection

        Args:
            services: Container de servicios construido con build_services()
        """
        if services is None:
            raise ValueError("services es requerido - usar build_services()")
        self.services = services
        self.physical = PhysicalConfig()

    def _ask_float(self, prompt: str, default: float) -> float:
        raw = input(f"{prompt} [{default:g}]: ").strip()
        if not raw:
            return default
        try:
            return float(raw)
        except ValueError:
            print(f"Valor inválido, se usa {default:g}")
            return default

    def show_spectrum(self):
        """Frecuencias y contenido de la rama A a un detuning"""
        omega_c, omega_d, coupling = lambda_parameters(self.physical, self.services.config.use_dressed_frequencies)
        detuning = self._ask_float("−Δ̄ (γ0)", 2.0)
        spectrum = self.services.spectrum_service.polariton_spectrum(
            CouplingMatrix(detuning=detuning, omega_c=omega_c, omega_d=omega_d, coupling=coupling)
        )
        print(f"\nω_c = {omega_c:.4f} γ0   ω_d = {omega_d:.4f} γ0   G̃ = {coupling:.4f} γ0")
        for branch in BRANCH_ORDER:
            print(f"  Ω_{branch} = {spectrum.frequency(branch):.6f} γ0")

    def show_otto(self):
        """Ciclo ideal con −Δ̄_i = 10·ω_c y −Δ̄_f a elección"""
        omega_c, omega_d, coupling = lambda_parameters(self.physical, self.services.config.use_dressed_frequencies)
        detuning_f = self._ask_float("−Δ̄_f (γ0)", 2.0)
        spec = OttoCycleSpec(
            detuning_i=10 * omega_c,
            detuning_f=detuning_f,
            omega_c=omega_c,
            omega_d=omega_d,
            coupling=coupling,
            baths=BathSpec.from_physical(self.physical),
        )
        result = self.services.thermo_service.ideal_otto(spec)
        print(f"\nW = {result.work:.6g}   Q_in = {result.heat_in:.6g}   η = {result.efficiency:.6f}")

    def run_subcommand(self):
        """Ejecuta una línea de argumentos del CLI"""
        line = input("Argumentos (ej: otto --config run.json --out output/): ").strip()
        if not line:
            return
        result = run_cli(shlex.split(line), config=self.services.config)
        print(f"exit code: {result['exit_code']}")

    def run(self):
        """Menú principal"""
        print("OAM Polariton Engine - Aplicación Interactiva")
        print("=" * 55)
        print("Nota: Para corridas reproducibles usar: python scripts/engine_cli.py")

        actions = {"1": self.show_spectrum, "2": self.show_otto, "3": self.run_subcommand}
        while True:
            print("\n¿Qué deseas ejecutar?")
            print("1. Espectro polaritónico a un detuning")
            print("2. Ciclo de Otto ideal (parámetros de referencia)")
            print("3. Subcomando del CLI")
            print("4. Salir")

            choice = input("\nElige opción (1-4): ").strip()
            if choice == "4":
                print("\n¡Hasta luego!")
                break
            action = actions.get(choice)
            if action is None:
                print("Error: Opción inválida. Elige entre 1-4.")
                continue
            try:
                action()
            except EngineError as e:
                print(f"[ERROR] {type(e).__name__}: {e}")


def main():
    """Función principal de la aplicación interactiva"""
    try:
        services = build_services(Config.from_env())
        PolaritonEngineInteractive(services).run()
    except KeyboardInterrupt:
        print("\n\n[STOP]  Aplicación interrumpida por el usuario")
    finally:
        print("Aplicación finalizada")


if __name__ == "__main__":
    main()

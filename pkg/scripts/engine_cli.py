#!/usr/bin/env python3
"""
CLI del motor de Otto polaritónico con DI estricta
Ejecuta cada subcomando desde una configuración JSON con output CSV/SVG determinístico
"""

import argparse
import asyncio
import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

# Agregar directorio padre al path para importar app
sys.path.insert(0, str(Path(__file__).parent.parent))

from app import __version__
from app.core.config import Config
from app.core.errors import EngineError, exit_code_for
from app.core.services import Services, build_services
from app.workflows.commands import CycleCommands, DynamicsCommands, RunContext, SpectrumCommands

logger = logging.getLogger(__name__)

SUBCOMMANDS = ["spectrum", "hopfield", "otto", "sweep", "sta", "finite", "twomode", "langevin"]

# Variable global para controlar verbosidad
_verbose_mode = False


def set_verbose_mode(verbose: bool):
    """Configura el modo verbose globalmente"""
    global _verbose_mode
    _verbose_mode = verbose


def log_event(level: str, msg: str, **kwargs):
    """Log estructurado en formato JSON Lines (solo en verbose)"""
    if _verbose_mode:
        event = {
            "ts": datetime.now(timezone.utc).isoformat(),
            "level": level,
            "msg": msg,
            **kwargs
        }
        print(json.dumps(event, ensure_ascii=False, default=str))


def print_progress(message: str):
    """Print para mostrar progreso (siempre visible)"""
    print(message)


def print_error(message: str):
    """Mensajes de error legibles por stderr"""
    print(message, file=sys.stderr)


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse argumentos CLI: un subcomando por artefacto más plot y schema"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="Archivo JSON de configuración de corrida")
    common.add_argument("--out", default=None, help="Directorio de salida (default: output.directory o output/)")
    common.add_argument("--units", choices=["gamma0", "si"], default="si",
                        help="Unidad de los campos de tasa sin tag en el bloque physical (default: si)")
    common.add_argument("--seed", type=int, default=None, help="Semilla del RNG (langevin)")
    common.add_argument("--format", choices=["csv", "csv+svg"], default=None, dest="output_format",
                        help="Artefactos a emitir (default: output.format)")
    common.add_argument("--verbose", action="store_true", help="Mostrar logs detallados (JSON Lines)")

    parser = argparse.ArgumentParser(
        description=f"OAM Polariton Engine CLI v{__version__}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Ejemplos de uso:
  # Curvas de frecuencias polaritónicas
  python engine_cli.py spectrum --config configs/spectrum.json --out output/

  # Ciclo de Otto ideal con SVG
  python engine_cli.py otto --config configs/otto.json --format csv+svg

  # Barrido (detuning_f, oam)
  python engine_cli.py sweep --config configs/sweep.json

  # Gráfico desde un CSV emitido
  python engine_cli.py plot --csv output/spectrum.csv --x detuning --y omega_A omega_C omega_B

  # Schema JSON de la configuración
  python engine_cli.py schema
        """
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        subparsers.add_parser(name, parents=[common], help=f"Subcomando {name}")

    plot = subparsers.add_parser("plot", parents=[common], help="SVG desde un CSV emitido")
    plot.add_argument("--csv", required=True, help="CSV de entrada")
    plot.add_argument("--x", required=True, help="Columna del eje x")
    plot.add_argument("--y", required=True, nargs="+", help="Columna(s) y")
    plot.add_argument("--z", default=None, help="Columna z (mapa de calor)")
    plot.add_argument("--out-file", default=None, help="SVG de salida (default: junto al CSV)")
    plot.add_argument("--title", default=None)

    subparsers.add_parser("schema", parents=[common], help="Imprime el JSON schema de la configuración")
    return parser.parse_args(argv)


def _context(services: Services, args: argparse.Namespace) -> RunContext:
    run_config = services.config_service.load_run_config(args.config, units=args.units, subcommand=args.command)
    out_dir = Path(args.out or run_config.output.directory)
    output_format = args.output_format or run_config.output.format
    config_hash = services.config_service.config_hash(
        run_config, subcommand=args.command, units=args.units, seed=args.seed
    )
    return RunContext(
        run_config=run_config,
        out_dir=out_dir,
        output_format=output_format,
        seed=args.seed,
        metadata={"config_hash": config_hash, "subcommand": args.command},
    )


def dispatch(services: Services, args: argparse.Namespace) -> Dict[str, Any]:
    """Ejecuta el subcomando y devuelve {"exit_code", "files", "summary"}"""
    if args.command == "schema":
        print(json.dumps(services.config_service.schema(), indent=2, ensure_ascii=False))
        return {"exit_code": 0, "files": [], "summary": {}}

    if args.command == "plot":
        path = services.plot_service.emit_plot(
            args.csv, x=args.x, y=args.y if len(args.y) > 1 else args.y[0], z=args.z,
            out_path=args.out_file, title=args.title,
        )
        return {"exit_code": 0, "files": [path], "summary": {}}

    context = _context(services, args)
    log_event("INFO", "run_started", command=args.command, config_hash=context.metadata["config_hash"])

    spectrum = SpectrumCommands(services)
    cycle = CycleCommands(services)
    dynamics = DynamicsCommands(services)
    handlers = {
        "spectrum": spectrum.run_spectrum,
        "hopfield": spectrum.run_hopfield,
        "otto": cycle.run_otto,
        "finite": cycle.run_finite,
        "twomode": cycle.run_twomode,
        "sta": dynamics.run_sta,
        "langevin": dynamics.run_langevin,
    }
    if args.command == "sweep":
        result = asyncio.run(cycle.run_sweep(context))
    else:
        result = handlers[args.command](context)
    return {"exit_code": 0, **result}


def run(argv: Optional[List[str]] = None, config: Optional[Config] = None) -> Dict[str, Any]:
    """Parsea, construye servicios y ejecuta; nunca lanza (errores → exit code)"""
    args = parse_args(argv)
    set_verbose_mode(args.verbose)

    # Configurar logging según verbosidad
    if args.verbose:
        from app.utils.logging_config import setup_debug_logging
        setup_debug_logging()
    else:
        from app.utils.logging_config import setup_quiet_logging
        setup_quiet_logging()

    try:
        services = build_services(config or Config.from_env())
        result = dispatch(services, args)
    except ValidationError as e:
        from app.services.config_service import ConfigService
        message = ConfigService.describe_error(e)
        print_error(f"[ERROR] Configuración inválida: {message}")
        log_event("ERROR", "validation_error", error=message)
        return {"exit_code": exit_code_for(e), "error": message}
    except EngineError as e:
        print_error(f"[ERROR] {type(e).__name__}: {e}")
        log_event("ERROR", "engine_error", error=str(e), kind=type(e).__name__, **{
            k: v for k, v in e.context.items() if isinstance(v, (int, float, str))
        })
        return {"exit_code": exit_code_for(e), "error": str(e)}

    for path in result.get("files", []):
        print_progress(f"[SAVE] {path}")
    if result.get("summary"):
        summary = " ".join(f"{k}={v}" for k, v in result["summary"].items())
        print_progress(f"[INFO] {args.command}: {summary}")
    log_event("INFO", "run_success", command=args.command, exit_code=0)
    return result


def main(argv: Optional[List[str]] = None) -> int:
    """Función principal con exit codes determinísticos (0 ok, 2 validación, 3 dominio, 4 numérico)"""
    load_dotenv()
    try:
        result = run(argv)
    except KeyboardInterrupt:
        log_event("INFO", "cli_interrupted")
        print_error("\n[INTERRUPT]  Ejecución interrumpida por usuario")
        return 1
    except Exception as e:
        log_event("ERROR", "cli_error", error=str(e))
        print_error(f"\n[CRASH] Error inesperado: {e}")
        return 1

    exit_code = result["exit_code"]
    if exit_code != 0:
        print_error("[TIP] Use --verbose para más detalles")
    log_event("INFO", "cli_exit", exit_code=exit_code)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())

"""
Factory para construcción de servicios con dependency injection
"""

from dataclasses import dataclass
from typing import Optional
import logging

from .config import Config
from ..services.spectrum_service import SpectrumService
from ..services.two_mode_service import TwoModeService
from ..services.thermo_service import ThermoService
from ..services.finite_time_service import FiniteTimeService
from ..services.sta_service import StaService
from ..services.langevin_service import LangevinService
from ..services.sweep_service import SweepService
from ..services.config_service import ConfigService
from ..services.file_service import FileService
from ..services.plot_service import PlotService

logger = logging.getLogger(__name__)


@dataclass
class Services:
    """Container de servicios construidos"""
    spectrum_service: SpectrumService
    two_mode_service: TwoModeService
    thermo_service: ThermoService
    finite_time_service: FiniteTimeService
    sta_service: StaService
    langevin_service: LangevinService
    sweep_service: SweepService
    config_service: ConfigService
    file_service: FileService
    plot_service: PlotService
    config: Config


def build_services(config: Optional[Config] = None) -> Services:
    """
    Construye todos los servicios con dependency injection

    Args:
        config: Configuración del sistema (usa Config.from_env() si no se pasa)

    Returns:
        Services: Container con todos los servicios configurados
    """
    if config is None:
        config = Config.from_env()

    config.validate()

    logger.debug("Construyendo servicios con dependency injection...")

    # Servicios base (sin dependencias)
    spectrum_service = SpectrumService(config=config)
    two_mode_service = TwoModeService(config=config)
    langevin_service = LangevinService(config=config)
    config_service = ConfigService(config=config)
    file_service = FileService(config=config)

    # Servicios con dependencias
    thermo_service = ThermoService(
        spectrum_service=spectrum_service,
        two_mode_service=two_mode_service,
        config=config
    )
    finite_time_service = FiniteTimeService(thermo_service=thermo_service, config=config)
    sta_service = StaService(
        spectrum_service=spectrum_service,
        two_mode_service=two_mode_service,
        config=config
    )
    sweep_service = SweepService(
        thermo_service=thermo_service,
        finite_time_service=finite_time_service,
        config=config
    )
    plot_service = PlotService(file_service=file_service, config=config)

    services_container = Services(
        spectrum_service=spectrum_service,
        two_mode_service=two_mode_service,
        thermo_service=thermo_service,
        finite_time_service=finite_time_service,
        sta_service=sta_service,
        langevin_service=langevin_service,
        sweep_service=sweep_service,
        config_service=config_service,
        file_service=file_service,
        plot_service=plot_service,
        config=config
    )

    logger.debug("[SUCCESS] Servicios construidos")

    return services_container

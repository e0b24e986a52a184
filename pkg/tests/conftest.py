"""
Fixtures compartidas: parámetros de referencia, contenedor de servicios y directorios de salida
"""

import math
from types import SimpleNamespace

import pytest

from app.core.config import Config
from app.core.services import build_services
from app.core.units import lambda_parameters
from app.models.cycle import BathSpec, OttoCycleSpec
from app.models.physical import PhysicalConfig

GAMMA0 = 2 * math.pi * 1e3


@pytest.fixture
def config() -> Config:
    return Config()


@pytest.fixture
def services(config):
    return build_services(config)


@pytest.fixture
def sodium_ring() -> PhysicalConfig:
    """L_p = 20, ℓ = 130, G̃ = 4γ0 (frecuencias de los modos laterales ~10² γ0)"""
    return PhysicalConfig()


@pytest.fixture
def low_oam_ring() -> PhysicalConfig:
    """ℓ = 19, G̃ = 0.2γ0: ω_c ≫ ω_d, régimen del modelo de dos modos"""
    return PhysicalConfig(oam=19, coupling=0.2 * GAMMA0)


@pytest.fixture
def high_oam_params(sodium_ring):
    omega_c, omega_d, coupling = lambda_parameters(sodium_ring)
    return SimpleNamespace(omega_c=omega_c, omega_d=omega_d, coupling=coupling, physical=sodium_ring)


@pytest.fixture
def low_oam_params(low_oam_ring):
    omega_c, omega_d, coupling = lambda_parameters(low_oam_ring)
    return SimpleNamespace(omega_c=omega_c, omega_d=omega_d, coupling=coupling, physical=low_oam_ring)


@pytest.fixture
def engine_spec(high_oam_params) -> OttoCycleSpec:
    """−Δ̄_i = 10ω_c, −Δ̄_f = 2γ0 con T_phonon = 100 nK"""
    return OttoCycleSpec(
        detuning_i=10 * high_oam_params.omega_c,
        detuning_f=2.0,
        omega_c=high_oam_params.omega_c,
        omega_d=high_oam_params.omega_d,
        coupling=high_oam_params.coupling,
        baths=BathSpec.from_physical(high_oam_params.physical),
    )


@pytest.fixture
def out_dir(tmp_path):
    path = tmp_path / "output"
    path.mkdir()
    return path


@pytest.fixture
def low_oam_engine(low_oam_params) -> OttoCycleSpec:
    """Ciclo de tres modos con ℓ = 19: ocupaciones O(1) en el extremo fonónico"""
    return OttoCycleSpec(
        detuning_i=10 * low_oam_params.omega_c,
        detuning_f=0.2,
        omega_c=low_oam_params.omega_c,
        omega_d=low_oam_params.omega_d,
        coupling=low_oam_params.coupling,
        baths=BathSpec.from_physical(low_oam_params.physical),
    )

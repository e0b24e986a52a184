"""
Unidades, constantes físicas y frecuencias desnudas de los modos laterales

Único módulo que toca valores SI: el resto del sistema trabaja en unidades de γ0.
"""

import math
import logging
from typing import Tuple

from scipy import constants

from app.models.physical import DerivedFrequencies, DimensionlessConfig, PhysicalConfig

logger = logging.getLogger(__name__)

HBAR = constants.hbar
K_B = constants.k
AMU = constants.physical_constants["atomic mass constant"][0]


def rotational_quantum(cfg: PhysicalConfig) -> float:
    """ħ/(2mR²) en rad/s"""
    mass = cfg.atom_mass * AMU
    return HBAR / (2.0 * mass * cfg.ring_radius ** 2)


def bogoliubov_dress(omega: float, interaction: float) -> float:
    """Frecuencia vestida de Bogoliubov ω' = sqrt(ω(ω + 4g̃N))"""
    if omega < 0 or interaction < 0:
        raise ValueError("ω y 4g̃N deben ser >= 0")
    return math.sqrt(omega * (omega + interaction))


def interaction_scale(cfg: PhysicalConfig) -> float:
    """4g̃N = 2ω_ρ a N/(πR) en unidades de γ0"""
    scale = 2.0 * cfg.trap_frequency * cfg.scattering_length * cfg.atom_number / (math.pi * cfg.ring_radius)
    return scale / cfg.photon_decay


def sidemode_frequencies(cfg: PhysicalConfig) -> DerivedFrequencies:
    """ω_{c,d} = ħ(L_p ± 2ℓ)²/(2mR²), Ω_p = ħL_p²/(2mR²) y sus versiones vestidas, en γ0"""
    quantum = rotational_quantum(cfg) / cfg.photon_decay
    omega_c = quantum * (cfg.winding_number + 2 * cfg.oam) ** 2
    omega_d = quantum * (cfg.winding_number - 2 * cfg.oam) ** 2
    interaction = interaction_scale(cfg)

    return DerivedFrequencies(
        omega_c=omega_c,
        omega_d=omega_d,
        rotational=quantum * cfg.winding_number ** 2,
        interaction=interaction,
        omega_c_dressed=bogoliubov_dress(omega_c, interaction),
        omega_d_dressed=bogoliubov_dress(omega_d, interaction),
    )


def lambda_parameters(cfg: PhysicalConfig, use_dressed: bool = False) -> Tuple[float, float, float]:
    """(ω_c, ω_d, G̃) en γ0 que alimentan la matriz de acoplamiento"""
    derived = sidemode_frequencies(cfg)
    coupling = cfg.coupling / cfg.photon_decay
    if use_dressed:
        return derived.omega_c_dressed, derived.omega_d_dressed, coupling
    return derived.omega_c, derived.omega_d, coupling


def thermal_ratio(temperature: float, photon_decay: float) -> float:
    """k_B T/(ħγ0): temperatura expresada como frecuencia en unidades de γ0"""
    if temperature < 0:
        raise ValueError("temperatura debe ser >= 0")
    return K_B * temperature / (HBAR * photon_decay)


def to_dimensionless(cfg: PhysicalConfig) -> DimensionlessConfig:
    gamma0 = cfg.photon_decay
    return DimensionlessConfig(
        atom_mass=cfg.atom_mass,
        ring_radius=cfg.ring_radius,
        winding_number=cfg.winding_number,
        oam=cfg.oam,
        atom_number=cfg.atom_number,
        scattering_length=cfg.scattering_length,
        photon_decay_si=gamma0,
        trap_frequency=cfg.trap_frequency / gamma0,
        phonon_decay=cfg.phonon_decay / gamma0,
        coupling=cfg.coupling / gamma0,
        thermal_photon=thermal_ratio(cfg.t_photon, gamma0),
        thermal_phonon=thermal_ratio(cfg.t_phonon, gamma0),
    )


def from_dimensionless(dcfg: DimensionlessConfig) -> PhysicalConfig:
    gamma0 = dcfg.photon_decay_si
    kelvin_per_unit = HBAR * gamma0 / K_B
    return PhysicalConfig(
        atom_mass=dcfg.atom_mass,
        ring_radius=dcfg.ring_radius,
        winding_number=dcfg.winding_number,
        oam=dcfg.oam,
        trap_frequency=dcfg.trap_frequency * gamma0,
        atom_number=dcfg.atom_number,
        scattering_length=dcfg.scattering_length,
        photon_decay=gamma0,
        phonon_decay=dcfg.phonon_decay * gamma0,
        coupling=dcfg.coupling * gamma0,
        t_photon=dcfg.thermal_photon * kelvin_per_unit,
        t_phonon=dcfg.thermal_phonon * kelvin_per_unit,
    )

"""
Modelos de parámetros físicos del BEC anular acoplado a la cavidad
"""

import math
from typing import Any, Dict, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, model_validator

UnitTag = Literal["si", "gamma0"]

# Campos de tipo tasa/frecuencia que aceptan tag de unidades
RATE_FIELDS = ("trap_frequency", "phonon_decay", "coupling")


class TaggedValue(BaseModel):
    """Valor numérico con unidad explícita"""
    model_config = ConfigDict(extra="forbid")

    value: float
    unit: UnitTag = "si"


class PhysicalConfig(BaseModel):
    """
    Entradas experimentales en SI (masa en amu, temperaturas en kelvin).

    Los campos de tasa (trap_frequency, phonon_decay, coupling) aceptan un número
    plano o un objeto {"value": x, "unit": "si"|"gamma0"}; la unidad por defecto de
    los números planos se pasa por contexto de validación ({"units": "gamma0"}).
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    atom_mass: float = Field(23.0, gt=0, description="Masa atómica en amu")
    ring_radius: float = Field(10e-6, gt=0, description="Radio del anillo en metros")
    winding_number: int = Field(20, description="Número de enrollamiento L_p")
    oam: int = Field(130, ge=1, description="Momento angular orbital ℓ de la luz")
    trap_frequency: float = Field(2 * math.pi * 840.0, gt=0, description="ω_ρ en rad/s")
    atom_number: int = Field(10_000, ge=0, description="Número de átomos N")
    scattering_length: float = Field(0.1e-9, gt=0, description="Longitud de scattering a en metros")
    photon_decay: float = Field(2 * math.pi * 1e3, gt=0, description="γ0 en rad/s")
    phonon_decay: float = Field(2 * math.pi * 10.0, gt=0, description="γ_m en rad/s")
    coupling: float = Field(4 * 2 * math.pi * 1e3, ge=0, description="G̃ en rad/s")
    t_photon: float = Field(0.0, ge=0, description="Temperatura del baño fotónico en K")
    t_phonon: float = Field(100e-9, ge=0, description="Temperatura del baño fonónico en K")

    @model_validator(mode="before")
    @classmethod
    def _resolve_unit_tags(cls, data: Any, info: ValidationInfo) -> Any:
        if not isinstance(data, dict):
            return data
        default_unit = "si"
        if info.context and info.context.get("units"):
            default_unit = info.context["units"]
        if default_unit not in ("si", "gamma0"):
            raise ValueError(f"unidad desconocida: {default_unit}")

        resolved: Dict[str, Any] = dict(data)
        gamma0 = resolved.get("photon_decay", cls.model_fields["photon_decay"].default)
        if isinstance(gamma0, dict):
            tagged = TaggedValue.model_validate(gamma0)
            if tagged.unit != "si":
                raise ValueError("photon_decay define la unidad γ0 y debe darse en SI")
            gamma0 = tagged.value
            resolved["photon_decay"] = gamma0

        for name in RATE_FIELDS:
            if name not in resolved:
                continue
            raw = resolved[name]
            if isinstance(raw, dict):
                tagged = TaggedValue.model_validate(raw)
                value, unit = tagged.value, tagged.unit
            elif isinstance(raw, (int, float)) and not isinstance(raw, bool):
                value, unit = float(raw), default_unit
            else:
                continue  # pydantic reporta el tipo inválido
            resolved[name] = value * gamma0 if unit == "gamma0" else value
        return resolved


class DerivedFrequencies(BaseModel):
    """Frecuencias derivadas en unidades de γ0"""
    model_config = ConfigDict(frozen=True)

    omega_c: float = Field(ge=0)
    omega_d: float = Field(ge=0)
    rotational: float = Field(ge=0, description="Ω_p")
    interaction: float = Field(ge=0, description="4g̃N")
    omega_c_dressed: float = Field(ge=0)
    omega_d_dressed: float = Field(ge=0)


class DimensionlessConfig(BaseModel):
    """Representación de PhysicalConfig con tasas en γ0 y temperaturas como k_B T/ħγ0"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    atom_mass: float
    ring_radius: float
    winding_number: int
    oam: int
    atom_number: int
    scattering_length: float
    photon_decay_si: float
    trap_frequency: float
    phonon_decay: float
    coupling: float
    thermal_photon: float
    thermal_phonon: float

"""
Workflows Module
Módulo de workflows con comandos especializados por subcomando

IMPORTANTE: El punto de entrada es scripts/engine_cli.py
"""

from .commands.spectrum_commands import SpectrumCommands
from .commands.cycle_commands import CycleCommands
from .commands.dynamics_commands import DynamicsCommands

__all__ = ['SpectrumCommands', 'CycleCommands', 'DynamicsCommands']

"""
Engine Commands Module
Comandos del CLI organizados por responsabilidad
"""

from .spectrum_commands import SpectrumCommands
from .cycle_commands import CycleCommands
from .dynamics_commands import DynamicsCommands
from .artifacts import RunContext

__all__ = ['SpectrumCommands', 'CycleCommands', 'DynamicsCommands', 'RunContext']

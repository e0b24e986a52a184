"""
OAM Polariton Engine - simulador del motor de Otto polaritónico en un BEC anular
"""

__version__ = "1.0.0"

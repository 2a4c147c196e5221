"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.
"""
# components/__init__.py

from .validate import ValidateCommand
from .ground import GroundCommand
from .steady import SteadyCommand
from .dynamics import DynamicsCommand
from .export import ExportInterface

__all__ = [
    'ValidateCommand',
    'GroundCommand',
    'SteadyCommand',
    'DynamicsCommand',
    'ExportInterface'
]

"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)
"""
# tests/conftest.py
import os
import sys

import pytest

# The application modules use flat imports, as when running src/main.py
sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, 'src'))

from coupled_modes import ModelParams  # noqa: E402


@pytest.fixture
def squeezed():
    """omega = 1, lambda = 0, mu = 0.5: the reference point with closed-form numbers."""
    return ModelParams(1.0, 0.0, 0.5)


@pytest.fixture
def generic():
    return ModelParams(1.0, 0.3, 0.2)

"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.
"""
# utils/config.py
import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

from errors import DomainError

logger = logging.getLogger(__name__)

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


@dataclass(frozen=True)
class Settings:
    """Defaults for the command line, overridable through the environment or a .env file."""
    workers: int = 4
    fock_cutoff: int = 40
    fock_dynamics_cutoff: int = 30
    dt: float = 1e-3
    gamma: float = 0.1
    temperature: float = 1.0
    log_level: str = 'WARNING'


def _read(name, cast, default):
    value = os.getenv(name)
    if value is None or value.strip() == '':
        return default
    try:
        return cast(value.strip())
    except ValueError as e:
        raise DomainError(f"Invalid value for {name}: {value!r}") from e


def load_environment(dotenv_path=None):
    """Load a .env file into the process environment (existing variables win)."""
    found = load_dotenv(dotenv_path)
    logger.debug("Loaded .env: %s", found)
    return found


def load_settings():
    """Read COHERENCE_* variables into a Settings object."""
    defaults = Settings()
    settings = Settings(
        workers=_read('COHERENCE_WORKERS', int, defaults.workers),
        fock_cutoff=_read('COHERENCE_FOCK_CUTOFF', int, defaults.fock_cutoff),
        fock_dynamics_cutoff=_read('COHERENCE_FOCK_DYNAMICS_CUTOFF', int, defaults.fock_dynamics_cutoff),
        dt=_read('COHERENCE_DT', float, defaults.dt),
        gamma=_read('COHERENCE_GAMMA', float, defaults.gamma),
        temperature=_read('COHERENCE_TEMPERATURE', float, defaults.temperature),
        log_level=_read('COHERENCE_LOG_LEVEL', str.upper, defaults.log_level),
    )
    if settings.workers < 1:
        raise DomainError(f"COHERENCE_WORKERS must be >= 1, got {settings.workers}")
    if settings.log_level not in LOG_LEVELS:
        raise DomainError(f"COHERENCE_LOG_LEVEL must be one of {LOG_LEVELS}, got {settings.log_level}")
    return settings

"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.
"""
# utils/sweep.py
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from errors import DomainError

logger = logging.getLogger(__name__)

SWEEPABLE = ('mu', 'lambda', 'T', 't')


@dataclass(frozen=True)
class SweepSpec:
    """A linear grid over one parameter plus the fixed parameters and output target."""
    name: str
    start: float
    stop: float
    count: int
    fixed: Dict[str, float] = field(default_factory=dict)
    out: Optional[str] = None
    fmt: str = 'csv'

    def __post_init__(self):
        if self.name not in SWEEPABLE:
            raise DomainError(f"Cannot sweep {self.name!r}; choose one of {', '.join(SWEEPABLE)}")
        if self.count < 2:
            raise DomainError(f"Sweep needs at least 2 points, got {self.count}")
        if not (np.isfinite(self.start) and np.isfinite(self.stop)):
            raise DomainError(f"Sweep bounds must be finite, got {self.start}:{self.stop}")

    def values(self):
        return [float(v) for v in np.linspace(self.start, self.stop, self.count)]


def parse_sweep(text, **extra):
    """Parse 'name:start:stop:count', e.g. 'mu:0:0.45:46'."""
    parts = text.split(':')
    if len(parts) != 4:
        raise DomainError(f"Sweep must look like name:start:stop:count, got {text!r}")
    name, start, stop, count = parts
    try:
        return SweepSpec(name.strip(), float(start), float(stop), int(count), **extra)
    except ValueError as e:
        if isinstance(e, DomainError):
            raise
        raise DomainError(f"Invalid sweep {text!r}: {e}") from e


def run_sweep(func, points, workers=1):
    """
    Evaluate func over points with a bounded thread pool.

    Results come back in input order, so the output does not depend on the
    number of workers.
    """
    points = list(points)
    logger.info("Evaluating %d sweep points with %d worker(s)", len(points), workers)
    if workers <= 1 or len(points) <= 1:
        return [func(point) for point in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, points))

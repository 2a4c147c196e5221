"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.
"""
# main.py
import logging
import sys

from app import SweepApp
from errors import EXIT_INVALID, CoherenceError
from utils.config import load_environment, load_settings


def main(argv=None):
    # Environment first so COHERENCE_* variables from .env are visible
    load_environment()
    try:
        settings = load_settings()
    except CoherenceError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INVALID

    logging.basicConfig(
        level=getattr(logging, settings.log_level),
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )

    # Initialize and run the application
    app = SweepApp(settings)
    return app.run(argv)


if __name__ == '__main__':
    raise SystemExit(main())

"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.
"""
# errors.py


class CoherenceError(ValueError):
    """Base class for every error raised by the simulator."""


class DimensionError(CoherenceError):
    """Wrong shape or non-symmetric matrix."""


class UnphysicalStateError(CoherenceError):
    """Covariance matrix violates the uncertainty principle."""


class InstabilityError(CoherenceError):
    """Model parameters outside the stable region."""


class DomainError(CoherenceError):
    """Argument outside its mathematical domain (negative temperature, t < 0, ...)."""


class DegenerateError(CoherenceError):
    """Singular linear system or matrix."""


class IntegratorError(CoherenceError):
    """Time stepping produced an unphysical state; a smaller step is needed."""


class TruncationError(CoherenceError):
    """Fock-space truncation leaks too much population into the top levels."""


# Exit codes used by the command line front end
EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2


def exit_code_for(error):
    """Map an exception to the CLI exit code."""
    if isinstance(error, (InstabilityError, DomainError, DimensionError)):
        return EXIT_INVALID
    return EXIT_NUMERICAL

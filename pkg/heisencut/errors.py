# errors.py
# Created On: Oct 19, 2026
#
"""Exception hierarchy shared by the core modules and the CLI."""


class HeisencutError(Exception):
    """Base class for every error raised by heisencut."""


class DimensionMismatchError(HeisencutError):
    """Operands live on spaces of different dimension."""


class HermiticityError(HeisencutError):
    """A matrix that must be self-adjoint is not."""


class UnitarityError(HeisencutError):
    """A matrix that must be unitary is not."""


class PreconditionError(HeisencutError):
    """A theorem hypothesis or an operation precondition does not hold."""


class CapExceededError(HeisencutError):
    """The joint dimension is above the configured brute-force cap."""


class ConfigError(HeisencutError):
    """Invalid run configuration."""


class FormatError(HeisencutError):
    """Malformed JSON input."""

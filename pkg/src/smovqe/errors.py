"""Exception types shared across the package."""


class SmoVqeError(Exception):
    """Base class for all errors raised by smovqe."""


class InvalidSpecError(SmoVqeError, ValueError):
    """A model, ansatz, or fit argument is outside its allowed domain."""


class DimensionError(SmoVqeError, ValueError):
    """Vector or operator dimensions do not match."""


class ShotBudgetError(SmoVqeError, ValueError):
    """Shot count is missing, non-positive, or too small for variance estimation."""


class MeasurementModeError(SmoVqeError, ValueError):
    """Finite-shot and infinite-shot quantities were mixed incompatibly."""


class ResourceCapError(SmoVqeError, RuntimeError):
    """Requested computation exceeds the dense-diagonalization cap."""


class ConfigError(SmoVqeError, ValueError):
    """An experiment configuration file or field is invalid."""


class RunComplete(SmoVqeError):
    """All optimization steps of a run have already been taken."""

"""Exception types shared across the package."""


class ModelError(Exception):
    """Base class for all errors raised by adasmatch."""


class DomainError(ModelError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class StepSizeError(DomainError):
    """An integration step is too coarse for the rate being integrated."""


class ConfigurationError(ModelError, ValueError):
    """A parameter set or config file is invalid as a whole."""


class NumericalError(ModelError, RuntimeError):
    """A numerical routine failed where success was expected."""

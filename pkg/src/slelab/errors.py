"""Exception types shared across the lab."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class BudgetError(ValueError):
    """A requested computation exceeds the configured size budget."""


class InsufficientScalesError(ValueError):
    """A point cloud cannot support the requested box-counting scale range."""


class SwallowedPointError(ValueError):
    """A boundary point entered a slit base during forward composition."""


class HorizonError(RuntimeError):
    """A sampled path ended before reaching the requested level or time."""


class ConfigError(ValueError):
    """An experiment configuration failed validation.

    The message names the offending field(s).
    """

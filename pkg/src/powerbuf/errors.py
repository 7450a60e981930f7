"""Exception types shared across the package."""


class PowerBufError(Exception):
    """Base class for all powerbuf errors."""


class ParameterError(PowerBufError, ValueError):
    """A parameter lies outside its mathematical domain (nonpositive rate,
    probability outside [0, 1], mismatched vector lengths, and so on)."""


class InfeasibleError(PowerBufError, ValueError):
    """An optimizer has no solution for the given parameters."""


class UnsupportedDistributionError(PowerBufError, TypeError):
    """The requested operation is undefined for this distribution kind,
    e.g. sampling a moments-only size law."""


class NoRootError(PowerBufError, RuntimeError):
    """A numeric root search found no sign change in its bracket."""


class ConfigError(PowerBufError, ValueError):
    """A run-configuration file is structurally invalid (unknown section,
    unknown key, unparseable value)."""

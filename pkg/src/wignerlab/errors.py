"""Exception types shared across the package."""


class WignerlabError(Exception):
    """Base class for all package errors."""


class UnsupportedOrderError(WignerlabError):
    """Moment order outside the supported bookkeeping range."""


class UnsupportedInputError(WignerlabError):
    """Input outside the supported domain of an exact oracle."""


class IncompatibleEnsemblesError(WignerlabError):
    """Two ensembles whose variance conventions do not match."""


class SingularPointError(WignerlabError):
    """Evaluation requested exactly at an excluded singular point."""


class RangeError(WignerlabError):
    """Argument outside the documented safe range (overflow / search budget)."""


class DegenerateExperimentError(WignerlabError):
    """Experiment whose defining quantity vanishes (e.g. zero fourth-moment gap)."""


class NumericalFailureError(WignerlabError):
    """Eigensolver failure; carries the seed of the offending sample."""

    def __init__(self, message, seed=None):
        super().__init__(message)
        self.seed = seed


class ConfigError(WignerlabError):
    """Invalid experiment configuration; carries per-field messages."""

    def __init__(self, field_errors):
        self.field_errors = list(field_errors)
        super().__init__("; ".join(self.field_errors))

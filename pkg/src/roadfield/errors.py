"""Exception types raised across the package."""


class RoadFieldError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(RoadFieldError):
    """Malformed or inconsistent configuration input."""


class DomainError(RoadFieldError, ValueError):
    """An algebraic operation was evaluated outside its admissible domain."""


class BracketError(RoadFieldError):
    """A root bracket could not be established (inconsistent parameters)."""


class NoTangencyError(RoadFieldError):
    """The strip dispersion system has no critical speed above c_KPP (L too small)."""


class EmptyDatumError(RoadFieldError):
    """Initial datum sampled to the zero state on the grid."""


class BlowUpError(RoadFieldError):
    """The explicit scheme produced non-finite or runaway values (CFL violation).

    Attributes carry the failing step index and simulation time so callers
    can report exactly where the run died.
    """

    def __init__(self, message: str, step: int | None = None, t: float | None = None):
        super().__init__(message)
        self.step = step
        self.t = t


class CflViolationError(RoadFieldError):
    """Grid time step exceeds the stability bound for the given parameters."""


class NoCrossingError(RoadFieldError):
    """A profile never crosses the requested threshold level."""


class TooFewSamplesError(RoadFieldError):
    """Not enough front samples in the fit window for a speed estimate."""


class GridMismatchError(RoadFieldError):
    """Two field states live on different grids."""

"""Exception hierarchy shared across the package.

Every data-facing error derives from ValueError, so callers that do not care
about the finer distinctions can catch one builtin type.
"""


class BehaviorMetricsError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(BehaviorMetricsError, ValueError):
    """Malformed input: bad shapes, non-finite values, unparsable files."""


class DimensionMismatchError(InvalidInputError):
    """Operands live in different ambient spaces; embed one of them first."""


class InsufficientDataError(InvalidInputError):
    """No trajectory is long enough for the requested horizon."""


class ConfigError(InvalidInputError):
    """An experiment configuration violates its invariants."""


class FalsifiedCandidateError(BehaviorMetricsError):
    """A candidate model does not contain the behavior spanned by the data."""

    def __init__(self, index: int, label: str, gap: float):
        self.index = index
        self.label = label
        self.gap = gap
        super().__init__(
            f"candidate {index} ({label}) is falsified by the data: "
            f"containment violated by a principal angle of {gap:.3e} rad"
        )

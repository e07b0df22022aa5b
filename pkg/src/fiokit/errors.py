"""Exception hierarchy for the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(ToolkitError):
    """A parameter is outside its admissible range."""


class InvalidInputError(ToolkitError):
    """Input data is malformed (non-finite samples, wrong shape)."""


class DimensionError(ToolkitError):
    """Grid specs of the operands do not agree."""


class ConstructionError(ToolkitError):
    """A construction-time invariant failed (normalization, coverage)."""


class ResolutionError(ToolkitError):
    """The grid or sampling is too coarse for the requested operation."""


class DegenerateInputError(ToolkitError):
    """An input field is numerically zero where a ratio is required."""

"""Exception types shared across the package."""


class GraphError(ValueError):
    """Invalid graph: bad edge data, self-loops, duplicates, or disconnected."""


class ConfigError(ValueError):
    """Invalid scenario or run configuration."""


class EnumerationLimitError(RuntimeError):
    """Subset enumeration would exceed the configured cap."""


class ConvergenceError(RuntimeError):
    """Numerical routine failed to converge to the requested tolerance."""

"""Exception types shared across the toolkit."""


class ParameterError(ValueError):
    """A physical or statistical parameter is outside its valid domain."""


class ConfigError(ParameterError):
    """A link config file could not be parsed.

    Carries the offending line number when one is known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ScenarioError(ValueError):
    """The requested behavioral scenario has no valid bound pairing."""


class MixtureTooLargeError(ValueError):
    """The constellation-product mixture exceeds the configured term cap."""


class QuadratureError(RuntimeError):
    """Numerical integration failed to reach the requested tolerance.

    `residual` holds the integrator's error estimate for diagnostics.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual

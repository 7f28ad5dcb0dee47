class ConfigError(ValueError):
    """Invalid configuration value; ``field`` names the offending setting."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class NetworkDepleted(RuntimeError):
    """Raised when an operation needs alive nodes and none remain."""

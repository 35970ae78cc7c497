"""Exception types shared across the toolkit.

Every error carries a stable machine-readable ``code`` so that callers
(tests, the service layer, the CLI) can react without parsing messages.
"""


class ToolkitError(Exception):
    """Base error; ``code`` is a short kebab-case identifier."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class DataError(ToolkitError):
    """Raised for malformed or unusable dataset inputs."""


class FetchError(ToolkitError):
    """Raised when a remote dataset cannot be retrieved or verified."""


class LearnerError(ToolkitError):
    """Raised when a model is asked to do something it cannot."""


class ExtractError(ToolkitError):
    """Raised for invalid feature-extraction requests."""


class SweepError(ToolkitError):
    """Raised for invalid grids or undetectable patterns."""


class MatrixError(ToolkitError):
    """Raised for accuracy-matrix and factorization problems."""


class ConfigError(ToolkitError):
    """Raised for unusable run configuration."""

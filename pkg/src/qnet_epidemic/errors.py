"""Exception hierarchy shared by all modules."""


class QNetError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgumentError(QNetError, ValueError):
    pass


class DegenerateGraphError(QNetError):
    """A threshold is undefined because the graph carries no edges (or lambda_1 = 0)."""

    def __init__(self, message, estimator=None):
        super().__init__(message)
        self.estimator = estimator


class NoConvergenceError(QNetError):
    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class MalformedFileError(QNetError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class TooLargeError(QNetError):
    """Requested computation exceeds a hard capability limit (e.g. exact chain with N > 12)."""


class InsufficientDataError(QNetError, ValueError):
    pass


class ConfigError(QNetError):
    def __init__(self, message, key=None, line=None):
        parts = []
        if line is not None:
            parts.append(f"line {line}")
        if key is not None:
            parts.append(f"key '{key}'")
        prefix = ", ".join(parts)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.key = key
        self.line = line

"""Exception hierarchy shared across the toolkit."""


class ClonescopeError(Exception):
    """Base class for all toolkit errors."""


class ScanError(ClonescopeError):
    """The project root could not be scanned at all."""


class ManifestError(ClonescopeError):
    """A corpus manifest line could not be parsed."""

    def __init__(self, message, line_number):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class UndefinedMetricError(ClonescopeError):
    """A ratio metric was requested over an empty universe."""


class CliqueGuardError(ClonescopeError):
    """Clique enumeration refused because the pair graph is too dense."""


class BackendError(ClonescopeError):
    """An LLM backend request failed after retries."""


class UnparseableResponseError(BackendError):
    """The LLM reply contained no usable similarity score."""

    def __init__(self, raw_response):
        super().__init__(f"no similarity score found in response: {raw_response!r}")
        self.raw_response = raw_response


class ReportError(ClonescopeError):
    """A report could not be written or re-emitted."""

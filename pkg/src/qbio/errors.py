"""Exception types shared across the package."""


class QbioError(Exception):
    """Base class for every error raised by qbio."""


class DegenerateInput(QbioError, ValueError):
    """An input is zero, empty, or otherwise outside the operation's domain."""


class DimensionError(QbioError, ValueError):
    """Mismatched Hilbert-space dimensions or physical units."""


class ConfigError(QbioError, ValueError):
    """Unknown option, regime name, or out-of-range configuration value."""


class InvalidState(QbioError, ValueError):
    """A state or operator violates its defining invariants beyond tolerance."""


class IntegrationError(QbioError, RuntimeError):
    """Time integration became unstable; retry with a smaller step."""


class InconsistentSelection(QbioError, ValueError):
    """Pre- and post-selected states admit no intermediate outcome."""

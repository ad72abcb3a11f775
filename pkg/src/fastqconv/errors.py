"""Exception types shared across the package."""


class SizeError(ValueError):
    """Register or problem size outside the supported range."""


class GeometryError(ValueError):
    """Inconsistent shapes: kernel/stride/pad geometry, qubit counts, map sizes."""


class DataError(ValueError):
    """Invalid data values (non-finite inputs, degenerate boxes)."""


class ConfigError(ValueError):
    """Invalid or unknown configuration values."""


class FormatError(ValueError):
    """Malformed file contents (tensor files, CIFAR records, checkpoints)."""


class DomainError(ValueError):
    """Analytic-model parameter outside its mathematical domain."""


class TrainingError(RuntimeError):
    """Training aborted (non-finite loss)."""

"""Exception hierarchy shared by the engine, the registry and the CLI."""


class EngineError(Exception):
    """Base class for every error raised by the engine"""


class StructureError(EngineError):
    """Operands live on incompatible variable sets"""


class WindowError(EngineError):
    """A window is too small to hold or certify a needed coefficient"""


class NonInvertibleError(EngineError):
    """Series has no monomial times unit factorization"""


class DomainError(EngineError):
    """Operation called outside its domain"""


class SingularSystemError(EngineError):
    """Interpolation system is singular at the sampled point; resample"""


class ConsistencyError(EngineError):
    """An internal consistency assertion failed"""


class ConfigError(EngineError):
    """Invalid run configuration or unknown identity id"""

class LpcError(Exception):
    """General class of errors raised by lpc_ad"""


class DimensionError(LpcError):
    """Tensor or data shapes do not agree"""


class ContractError(LpcError):
    """A precondition of an operation is violated"""


class NonFiniteValueError(LpcError):
    """A computation produced NaN or Inf"""


class TrainingDivergedError(NonFiniteValueError):
    """The training loss became non-finite"""


class ConfigError(LpcError):
    """Invalid configuration values or files"""


class UndefinedMetricError(LpcError):
    """A metric is not defined for the given inputs"""


class DataError(LpcError):
    """General class of data layer errors"""


class ParseError(DataError):
    """A data file could not be parsed"""


class SeriesTooShortError(DataError):
    """A series does not fit a single window pair"""


class SynthSpecError(DataError):
    """A synthetic data spec is inconsistent"""


class CheckpointError(DataError):
    """A checkpoint is malformed or inconsistent with its hyperparameters"""

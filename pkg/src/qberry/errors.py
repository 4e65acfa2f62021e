"""Exception types raised across the library."""


class QberryError(Exception):
    """Base class for all library errors."""


# --- linear algebra ---------------------------------------------------------

class NotSquareError(QberryError):
    pass


class NotHermitianError(QberryError):
    pass


class NoConvergenceError(QberryError):
    pass


class DimensionOverflowError(QberryError):
    pass


class DimensionMismatchError(QberryError):
    pass


class BadSubsystemIndexError(QberryError):
    pass


# --- device / model ---------------------------------------------------------

class NonPositiveCapacitanceError(QberryError):
    pass


class CutoffTooSmallError(QberryError):
    pass


class WrongQubitCountError(QberryError):
    pass


class UnsupportedQubitCountError(QberryError):
    pass


# --- geometry / entanglement ------------------------------------------------

class NotNormalizedError(QberryError):
    pass


class TooFewSamplesError(QberryError):
    pass


class NonUnitarySampleError(QberryError):
    pass


class DegenerateWeightsError(QberryError):
    pass


class NonOrthonormalEnsembleError(QberryError):
    pass


class NotDensityMatrixError(QberryError):
    pass


class WrongDimensionError(QberryError):
    pass


# --- configuration / sweeps -------------------------------------------------

class ConfigError(QberryError):
    """Base class for sweep-configuration problems."""


class ParseError(ConfigError):
    def __init__(self, line_number: int, reason: str):
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


class UnknownKeyError(ConfigError):
    pass


class OutOfRangeError(ConfigError):
    pass

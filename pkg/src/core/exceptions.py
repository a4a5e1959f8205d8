from enum import IntEnum


class ExitCode(IntEnum):
    SUCCESS = 0
    VALIDATION_ERROR = 2
    NUMERICAL_DIAGNOSTIC = 3


class EntropyLabError(Exception):
    """Base error of the package, carries the CLI exit code it maps to"""

    exit_code: ExitCode = ExitCode.VALIDATION_ERROR


# Validation
class NonStandardized(EntropyLabError): ...


class DimensionMismatch(EntropyLabError): ...


class OrderOutOfRange(EntropyLabError): ...


class InsufficientCumulants(EntropyLabError): ...


class InsufficientNodes(EntropyLabError): ...


class UnsupportedFamily(EntropyLabError): ...


class ThresholdTooLow(EntropyLabError): ...


class DensityBounded(EntropyLabError): ...


class CumulantAssumptionViolated(EntropyLabError): ...


class CalibrationFailure(EntropyLabError): ...


class IoFailure(EntropyLabError): ...


# Numerical diagnostics
class NumericalDiagnostic(EntropyLabError):
    exit_code = ExitCode.NUMERICAL_DIAGNOSTIC


class GridTooCoarse(NumericalDiagnostic): ...


class QuadratureFailure(NumericalDiagnostic): ...


class NegativeEntropyBeyondFloor(NumericalDiagnostic): ...

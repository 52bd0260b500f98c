"""Exception hierarchy. Every error carries the CLI exit code it maps to."""


class BsgsError(Exception):
    exit_code = 1


class InputError(BsgsError, ValueError):
    exit_code = 2


class NumericalError(BsgsError, ArithmeticError):
    exit_code = 3


class ConfigError(BsgsError):
    exit_code = 4


# Input errors
class GroupStructureError(InputError):
    pass


class OverlapError(GroupStructureError):
    pass


class CoverageError(GroupStructureError):
    pass


class EmptyGroupError(GroupStructureError):
    pass


class ShapeError(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, row: int = None, column: str = None):
        super().__init__(message)
        self.row = row
        self.column = column


class UnknownColumnError(InputError):
    pass


class UnmappedColumnError(InputError):
    pass


class ResponseInGroupMapError(UnmappedColumnError):
    """The response column was listed as a predictor in the group map."""


class InputFileError(InputError, FileNotFoundError):
    pass


class SchemaError(InputError):
    pass


class ZeroTruthError(InputError):
    pass


# Numerical errors
class RankError(NumericalError):
    pass


class SingularSupportError(NumericalError):
    pass


class SupportTooLargeError(NumericalError):
    pass


class OrthogonalityError(NumericalError):
    pass


class IterationCapError(NumericalError):
    pass


class SearchStallError(NumericalError):
    pass


class CholeskyError(NumericalError):
    pass


class DomainError(NumericalError):
    pass


# Config errors
class SizeError(ConfigError):
    pass


class TooLargeError(ConfigError):
    pass


class InvalidConfigError(ConfigError, ValueError):
    pass


class FitAtSizeError(BsgsError):
    """Wraps an error raised while fitting a particular model size."""

    def __init__(self, model_size: int, cause: BsgsError):
        super().__init__(f"Fit failed at model size T={model_size}: {cause}")
        self.model_size = model_size
        self.cause = cause
        self.exit_code = cause.exit_code

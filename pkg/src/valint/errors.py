"""Exception hierarchy.  Each class carries the stable code the CLI reports."""


class ValintError(Exception):
    code = "E000"


class DomainError(ValintError, ArithmeticError):
    """An operation was applied outside its domain (e.g. inverting zero)."""

    code = "E013"


class PrecisionError(ValintError):
    """A result is not determined by the precision of the inputs."""

    code = "E010"


class SingularMatrixError(ValintError):
    code = "E011"


class DepthLimitError(ValintError):
    """A refinement would enumerate more cosets than the configured limit."""

    code = "E012"

"""
Exception hierarchy for the parabolic Catalan toolkit.
Every error carries the process exit code the CLI reports for it.
"""


class ParacatError(Exception):
    """Base class for all toolkit errors"""

    exit_code = 1


class InputError(ParacatError):
    """Semantic validation failure on user-supplied data"""

    exit_code = 3


class TableauShapeError(InputError):
    """Columns do not match the declared shape"""


class PreconditionError(InputError):
    """Operation called on an input outside its domain"""


class ResourceGuardError(ParacatError):
    """An enumeration or hull budget was exceeded"""

    exit_code = 4

    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeds configured limit {limit}")
        self.what = what
        self.limit = limit


class InvariantViolation(ParacatError):
    """Two equivalent formulations of the same property disagreed"""

    exit_code = 1

"""
Exception hierarchy for pyvbs

Every class also derives from the built-in exception a caller would expect,
so ``except ValueError`` keeps working around model and precondition errors.
"""
from typing import Optional


class ValuationError(Exception):
    """Base class for all pyvbs errors"""
    exit_code = 4


class ModelError(ValuationError, ValueError):
    """Unknown variable or value, malformed frame, inconsistent frames"""
    exit_code = 2


class ModelFormatError(ModelError):
    """Text input could not be parsed"""

    def __init__(self, message: str, line: Optional[int] = None,
                 column: Optional[int] = None, source: Optional[str] = None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)


class QuerySyntaxError(ModelFormatError):
    """Query text could not be parsed"""


class PreconditionError(ValuationError, ValueError):
    """An operation was called outside its precondition"""
    exit_code = 2


class InstanceMismatchError(ValuationError, TypeError):
    """Operands belong to different valuation instances"""
    exit_code = 2


class CapabilityError(ValuationError, TypeError):
    """The instance does not support the requested operation"""
    exit_code = 3


class SchedulingError(ValuationError, RuntimeError):
    """A message was requested before its prerequisites were computed"""
    exit_code = 4


class InvariantError(ValuationError, RuntimeError):
    """A verification found a deviation above tolerance"""
    exit_code = 4

"""Exception hierarchy shared by every module."""


class FloerbarsError(Exception):
    """Base class for all package errors."""


class StructuralError(FloerbarsError, ValueError):
    """Input data is malformed: bad indices, mismatched dimensions, invalid objects."""


class RangeError(FloerbarsError, ValueError):
    """A scalar argument is outside its admissible range."""


class PreconditionError(FloerbarsError, ValueError):
    """An operation was called on inputs that violate its documented precondition."""


class RankError(FloerbarsError):
    """Cohomology does not have the rank an operation requires."""


class UndefinedValueError(FloerbarsError):
    """The requested quantity is not defined for this input."""


class SchemaError(FloerbarsError, ValueError):
    """A JSON document does not match its schema.

    ``where`` locates the offending element, either a JSON path such as
    ``bars[2].left`` or a ``line:column`` position for syntax errors.
    """

    def __init__(self, message: str, where: str = "$"):
        super().__init__(f"{where}: {message}")
        self.where = where

"""Exception hierarchy.

Every error raised by the library derives from :class:`BudqError`.  The two
intermediate classes map onto CLI exit codes: :class:`InputError` (exit 2)
and :class:`ResourceError` (exit 3).
"""


class BudqError(Exception):
    exit_code = 1


class InputError(BudqError, ValueError):
    """Bad parameters, malformed files, failed validation."""

    exit_code = 2


class ResourceError(BudqError, RuntimeError):
    """A search would exceed a configured size guard."""

    exit_code = 3


class InvalidParameterError(InputError):
    pass


class HypothesisViolationError(InvalidParameterError):
    """A formula was called outside the range where it is known to hold."""


class MalformedTableError(InputError):
    pass


class QuandleAxiomError(InputError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"table is not a quandle: {report.summary()}")


class InvalidGroupError(InputError):
    def __init__(self, axiom, witness=None):
        self.axiom = axiom
        self.witness = witness
        msg = f"not a group: {axiom} fails"
        if witness is not None:
            msg += f" at {witness}"
        super().__init__(msg)


class DiagramParseError(InputError):
    def __init__(self, msg, offset):
        self.offset = offset
        super().__init__(f"{msg} (byte offset {offset})")


class SchemaError(InputError):
    def __init__(self, path, msg):
        self.path = path
        super().__init__(f"{path or '<root>'}: {msg}")


class DiagramValidationError(InputError):
    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("invalid diagram:\n  " + "\n  ".join(self.failures))


class MoveError(InputError):
    pass


class PresentationError(InputError):
    pass


class GroupTooLargeError(ResourceError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"generated permutation group has more than {cap} elements")


class EnumerationBoundError(ResourceError):
    pass

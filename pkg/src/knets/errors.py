"""Exception types shared across the package.

Two failure channels are distinguished because the CLI maps them to
different exit codes: malformed serialized input (exit 1) versus a violated
mathematical contract on well-formed data (exit 2).
"""


class InputError(ValueError):
    """Raised when serialized input cannot be parsed or fails schema checks."""


class ContractViolation(ValueError):
    """Raised when an operation's precondition or invariant fails.

    ``detail`` carries a JSON-serializable description of the violating
    object so the CLI can report it verbatim.
    """

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail

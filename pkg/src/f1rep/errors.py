class F1RepError(Exception):
    pass


class ContractError(F1RepError):
    """A precondition of an operation was violated by the caller."""


class InputError(F1RepError, ValueError):
    """Malformed input data; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message

    def nested(self, prefix: str) -> "InputError":
        return InputError(f"{prefix}.{self.path}" if self.path else prefix, self.message)


class UnsupportedShapeError(F1RepError):
    """The operation is only defined for a particular quiver shape."""

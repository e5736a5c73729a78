"""Exception types shared across the package."""


class EnmityError(Exception):
    """Base class for all package errors."""


class StructuralError(EnmityError, ValueError):
    """Malformed graph or input file.

    ``where`` carries the offending pair, line number, or cell coordinates.
    """

    def __init__(self, message, where=None):
        super().__init__(message if where is None else f"{message} (at {where})")
        self.where = where


class EmptyWorldError(EnmityError, ValueError):
    """A requested view has no edges, so paradox quantities are undefined."""

    def __init__(self, view_name):
        super().__init__(f"empty world: view {view_name!r} has no edges")
        self.view_name = view_name


class WalkOverflowError(EnmityError, OverflowError):
    pass


class MissingAttributeError(EnmityError, KeyError):
    def __init__(self, name, missing):
        self.name = name
        self.missing = tuple(missing)
        super().__init__(f"attribute {name!r} missing on {len(self.missing)} node(s): {list(self.missing)[:10]}")

    def __str__(self):
        return self.args[0]


class GenerationError(EnmityError, RuntimeError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class SizeCapError(EnmityError, ValueError):
    pass

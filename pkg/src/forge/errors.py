"""Exception types shared across the pipeline."""

from __future__ import annotations


class ForgeError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ForgeError):
    def __init__(self, message: str, file: str = "<input>", line: int = 0, col: int = 0):
        super().__init__(f"{file}:{line}:{col}: {message}")
        self.message = message
        self.file = file
        self.line = line
        self.col = col


class LinkError(ForgeError):
    def __init__(self, message: str, file: str = "", line: int = 0):
        loc = f"{file}:{line}: " if file else ""
        super().__init__(f"{loc}{message}")
        self.message = message
        self.file = file
        self.line = line


class ManifestError(ForgeError):
    pass


class MissingFile(ForgeError):
    pass


class BaselineError(ForgeError):
    pass


class NoViableTests(ForgeError):
    pass


class TransformError(ForgeError):
    pass


class PatchApplyError(ForgeError):
    pass


class PreconditionError(ForgeError):
    pass


class IoError(ForgeError):
    pass


class ConsistencyError(ForgeError):
    pass


class SchemaError(ForgeError):
    def __init__(self, message: str, field: str = ""):
        loc = f"{field}: " if field else ""
        super().__init__(f"{loc}{message}")
        self.field = field
        self.message = message


class DigestMismatch(ForgeError):
    pass


class DegenerateCorpus(ForgeError):
    pass

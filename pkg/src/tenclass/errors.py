"""Exception types raised across the package."""

from __future__ import annotations


class TenclassError(Exception):
    """Base class for all errors raised by tenclass."""


class DimensionMismatch(TenclassError, ValueError):
    pass


class TensorTooLarge(TenclassError, ValueError):
    pass


class ZeroDiagonal(TenclassError, ValueError):
    """A diagonal entry a_{i...i} is zero where the operation needs it nonzero."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"diagonal entry at i={index} is zero")


class NotNekrasov(TenclassError, ValueError):
    def __init__(self, index: int | None, message: str = ""):
        self.index = index
        super().__init__(message or f"tensor is not Nekrasov (row {index})")


class HypothesisViolated(TenclassError, ValueError):
    """Row ``index`` has no nonzero entry with a trailing index beyond ``index``."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"row {index} has no nonzero off-diagonal entry with an index > {index}")


class NoConvergence(TenclassError, RuntimeError):
    pass


class NoSolutionFound(TenclassError, RuntimeError):
    """The search was exhausted. This does not prove that no solution exists."""


class TensorFileError(TenclassError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class ParseError(TensorFileError):
    pass


class DuplicateIndex(TensorFileError):
    pass


class OutOfRange(TensorFileError):
    pass

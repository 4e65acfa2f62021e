"""Errors raised while reading sweep CSVs."""


class FiguresError(Exception):
    """Base class for plotting errors."""


class MissingColumnError(FiguresError):
    def __init__(self, column: str):
        super().__init__(f"CSV is missing required column {column!r}")
        self.column = column


class EmptyInputError(FiguresError):
    pass

"""mcadd: mcadd/util.py
Common utility code shared between modules.
"""

import argparse


class AbortError(Exception):
    """Exception where mcadd should abort."""

    exit_code = 1


class DomainError(AbortError, ValueError):
    """A value lies outside the domain of a code or interval."""


class NotACodewordError(DomainError):
    """A stable word is not a codeword of the code it was decoded with."""


class UsageError(AbortError, ValueError):
    """Invalid parameters, arity or empty input."""

    exit_code = 2


class WidthError(UsageError):
    """Word length doesn't match what the operation expects."""


class UnsupportedError(UsageError):
    """The operation isn't defined for the given code family."""


class ParseError(UsageError):
    """Text couldn't be parsed. Carries 1-based ``line`` and ``column``
    when the error stems from a file."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class BudgetExceededError(AbortError):
    """An enumeration guard tripped."""

    exit_code = 3

    def __init__(self, message, limit):
        self.limit = limit
        super().__init__(f"{message} (limit {limit})")


def log_heading(caption):
    """Formatted heading for logging output sections."""
    return f"{f'--[ {caption} ]':-<50}"


# argparse related classes


class MyArgumentParser(argparse.ArgumentParser):
    """Custom parser that allows for comments in argument files."""

    def convert_arg_line_to_args(self, arg_line):
        stripped = arg_line.strip()
        # blank lines and comments carry no arguments
        if not stripped or stripped.startswith("#"):
            return []
        if stripped.startswith(tuple(self.prefix_chars)):
            # "--max-evals   1000" -> ["--max-evals", "1000"]
            return stripped.split(None, 1)
        # positional words may contain the hybrid separator space
        return [stripped]


class MyHelpFormatter(argparse.HelpFormatter):
    """Keeps explicit line breaks in help texts starting with 'N|'."""

    def _split_lines(self, text, width):
        if not text.startswith("N|"):
            return super()._split_lines(text, width)
        lines = []
        for line in text[2:].splitlines():
            lines.extend(super()._split_lines(line, width))
        return lines

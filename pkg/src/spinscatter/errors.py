"""Exception hierarchy shared by the library and the CLI."""


class SpinScatterError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SpinScatterError, ValueError):
    """Malformed arguments: invalid angular-momentum labels, unnormalized states, wrong basis."""


class ChannelError(SpinScatterError, KeyError):
    """A requested (l, s) channel is absent from a phase-shift table."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class RangeError(SpinScatterError, ValueError):
    """A relative momentum falls outside the sampled grid of a phase-shift table."""


class TableFormatError(SpinScatterError, ValueError):
    """A phase-shift file could not be parsed.

    ``line`` is the 1-based line number of the offending row (None when the
    problem is not tied to a single line).
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)

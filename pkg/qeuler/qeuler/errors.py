"""Exception hierarchy shared by the library and the command line.

Library code raises these; only ``cli.run`` turns them into an error document
and a process exit code.
"""


class QEulerError(Exception):
    """Base class for every error raised by qeuler."""

    kind = 'internal'
    exit_code = 1


class ValidationError(QEulerError, ValueError):
    """Input outside the supported range (non-Fano space, bad index, bad query...)."""

    kind = 'validation'
    exit_code = 2


class SeriesError(QEulerError, ValueError):
    """Truncated series used past its order, or inverted with a zero constant term."""

    kind = 'series'
    exit_code = 2


class TableLimitError(QEulerError):
    """A descendant invariant was requested above the table's k bound."""

    kind = 'table_limit'
    exit_code = 2


class CacheError(QEulerError):
    kind = 'cache'
    exit_code = 2


class IdentityCheckError(QEulerError):
    """Two computational routes that must agree gave different values."""

    kind = 'identity_check'
    exit_code = 3

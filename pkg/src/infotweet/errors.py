"""Exception types shared across the toolkit.

Both map onto CLI exit codes: DataError -> 3, NumericError -> 4.
"""


class DataError(Exception):
    """Malformed or inconsistent input data (files, ids, labels, shapes)."""


class NumericError(Exception):
    """Numeric failure during training (non-finite loss or parameters)."""

"""Exception types shared across the package.

Everything derives from ValueError so callers who do not care about the
distinction can catch the builtin.
"""


class TonalSpaceError(ValueError):
    """Base class for all tonalspace errors."""


class ChromaError(TonalSpaceError):
    """Malformed chroma input: wrong length, negative or non-finite bins,
    or an unparseable file row."""


class WeightMismatchError(TonalSpaceError):
    """Operands were built with different interval weight vectors."""


class DegenerateInputError(TonalSpaceError):
    """Operation is undefined for this input (silence, zero norm, empty range)."""


class InsufficientInputError(TonalSpaceError):
    """Too few frames for a temporal operation."""

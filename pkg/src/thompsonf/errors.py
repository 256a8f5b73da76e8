"""Exception hierarchy shared by the whole package.

The CLI maps these onto exit codes, so new error conditions should
subclass one of the three mid-level classes rather than raising bare
ValueError.
"""


class ThompsonError(Exception):
    """Base class for all package errors."""


class ParseError(ThompsonError):
    """Malformed textual input (trees, forests, spans, dyadics, words)."""


class MismatchError(ThompsonError):
    """Objects do not line up for composition, tensor, or group context."""


class ValidationError(ThompsonError):
    """A value violates a domain invariant (arity, slope, monotonicity...)."""


class NotAPowerOfTwo(ValidationError):
    """A ratio required to be an integer power of two is not one."""


class NotASubtree(ValidationError):
    """A tree is not a root-sharing subtree of the tree it should refine."""

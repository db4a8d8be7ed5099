"""
Error types shared by every module.

All of them are ValueErrors so callers that only care about "bad input"
can keep catching ValueError.
"""


class MajIndexError(ValueError):
    """Base class for toolkit errors"""


class PermutationError(MajIndexError):
    """Malformed word, degree mismatch or bad insertion position"""


class DegreeLimitError(MajIndexError):
    """Requested degree is above the enumeration ceiling"""


class FormulaNotApplicable(MajIndexError):
    """A closed form was requested outside its hypotheses"""


class DomainError(MajIndexError):
    """Input lies outside the domain of a construction"""


class InvariantViolation(MajIndexError):
    """An internal consistency check failed; this is a bug, not bad input"""

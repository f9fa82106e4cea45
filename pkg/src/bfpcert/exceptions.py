"""Exception hierarchy shared by all modules."""


class BfpError(Exception):
    """Base class for every error raised by :mod:`bfpcert`."""


class InputError(BfpError, ValueError):
    """Malformed input data (bad files, bad sign strings, bad indices)."""


class LengthMismatch(InputError):
    pass


class BadCharacter(InputError):
    pass


class AllZero(InputError):
    pass


class RankDeficient(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class RepeatedIndex(InputError):
    pass


class NoNormalization(BfpError):
    """No permutation of lambda makes the pair chi-normalized.

    This only happens when the chirotope violates a 3-term
    Grassmann-Pluecker sign condition.
    """


class NotAffineBasis(BfpError):
    pass


class NotAPivot(BfpError):
    pass


class DegeneratePivot(BfpError):
    pass


class NoAffineBasis(BfpError):
    pass


class UnlistedPattern(BfpError):
    pass


class TypeClassificationFailed(BfpError):
    pass


class CancellationFailed(BfpError):
    pass


class ZeroBracket(BfpError):
    pass


class EmptyInequalitySupport(BfpError):
    pass


class ParseError(InputError):
    """File parse failure carrying a 1-based line and column."""

    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)

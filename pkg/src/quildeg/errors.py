"""Exception hierarchy shared across the package.

Every error carries an ``exit_code`` so the CLI can map failures onto the
documented process exit statuses without inspecting types one by one.
"""


class QuildegError(Exception):
    exit_code = 3


class ParseError(QuildegError):
    exit_code = 1

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        loc = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(loc + message)


class FixtureSyntaxError(ParseError):
    pass


class DuplicateName(ParseError):
    pass


class UnknownReference(ParseError):
    pass


class BadPermutation(ParseError):
    pass


class CapacityExceeded(QuildegError):
    exit_code = 2


class GroupTooLarge(CapacityExceeded):
    pass


class Divergent(CapacityExceeded):
    pass


class ZeroSeries(QuildegError):
    pass


class ZeroModule(QuildegError):
    pass


class NotMinimalPrime(QuildegError):
    pass


class NotArtinian(QuildegError):
    pass


class CriterionMismatch(QuildegError):
    pass


class InvariantViolation(QuildegError):
    pass


class MissingModel(QuildegError):
    exit_code = 4


class MissingAlgebraicSide(QuildegError):
    exit_code = 4

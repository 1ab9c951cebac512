"""Exception types raised by dbhom."""


class DeBruijnError(ValueError):
    pass


class NotFound(DeBruijnError):
    pass


class InvalidBeta(DeBruijnError):
    pass


class WordTooShort(DeBruijnError):
    pass


class NotPropertyD(DeBruijnError):
    pass


class NotVertexDisjoint(DeBruijnError):
    pass


class TooLarge(DeBruijnError):
    pass


class EvenAlphabetNeedsBase(DeBruijnError):
    pass


class NotDeBruijn(DeBruijnError):
    pass


# construct uses the longer name for the same condition
NotDeBruijnInput = NotDeBruijn


class BadParameters(DeBruijnError):
    pass


class GammaZero(BadParameters):
    pass


class BadLambda(BadParameters):
    pass


class NoPairFound(DeBruijnError):
    pass


class PairNotConjugate(DeBruijnError):
    pass


class PairNotSplit(DeBruijnError):
    pass

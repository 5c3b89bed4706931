"""Exception types shared across the toolkit."""


class UmrowError(Exception):
    """Base class for every error raised by this package."""


class MixedRings(UmrowError):
    """Operands belong to different rings."""


class EmptyRow(UmrowError):
    """A row operation received an empty row."""


class InfiniteRing(UmrowError):
    """The operation needs a finite ring (enumeration, BFS, ...)."""


class UnsupportedBase(UmrowError):
    """The ring backend cannot support the requested operation."""


class DiagonalIndex(UmrowError):
    """Elementary generator indices must satisfy i != j."""


class IndexOutOfRange(UmrowError):
    """A matrix or permutation index is out of bounds."""


class SizeMismatch(UmrowError):
    """Row length and word/matrix size disagree."""


class NotUnimodular(UmrowError):
    """The row admits no unimodularity witness."""


class NotRelUnimodular(UmrowError):
    """The row is not congruent to e1 modulo the declared ideal."""


class BudgetExceeded(UmrowError):
    """A bounded search ran out of its node budget."""


class TailMismatch(UmrowError):
    """Product representatives do not share their last n-1 coordinates."""


class NoModularInverse(UmrowError):
    """No w1 with v1*w1 = 1 modulo the tail ideal exists."""


class OddSize(UmrowError):
    """Symplectic checks need matrices of even size."""


class NoWitnessWithinBound(UmrowError):
    """No polynomial witness exists within the degree bound."""


class CertificateInvalid(UmrowError):
    """A supplied certificate does not replay to its claimed target."""


class BFSFailure(UmrowError):
    """An orbit search that must succeed over this ring did not."""


class HypothesisFailed(UmrowError):
    """The stable-dimension hypothesis for the group table is violated.

    Recorded as a flag during table construction; raised only by callers
    that opt into strict checking.
    """

"""Exception hierarchy shared by all ietext modules."""


class IetextError(Exception):
    """Base class for every error raised by this package."""


class NonPositiveLength(IetextError):
    """A length vector contains a zero or negative entry."""


class ReduciblePermutation(IetextError):
    """The permutation fixes a prefix {1..k}, k < n, so the IET splits."""


class LengthMismatch(IetextError):
    """Vector sizes disagree (lengths vs permutation, tuple vs IET, ...)."""


class OutOfDomain(IetextError):
    """A point lies outside the half-open interval of definition."""


class IterateCapExceeded(IetextError):
    """An orbit computation exceeded its iterate budget."""


class DegenerateLengths(IetextError):
    """The induction tie lambda_n == lambda_{pi^-1(n)} was hit."""


class IndexOutOfRange(IetextError):
    """An interval or tuple index is outside 1..n."""


class UnsupportedLabel(IetextError):
    """The representation label is outside the implemented inventory."""


class DescriptorMismatch(IetextError):
    """Group elements from different groups were combined."""


class MismatchedBase(IetextError):
    """Two extended states do not share the same base IET."""

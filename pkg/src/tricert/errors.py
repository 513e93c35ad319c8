"""Exception types shared across the package."""


class TricertError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(TricertError):
    """Operands have incompatible shapes or moduli."""


class ImNotInKerError(TricertError):
    """Relation generators do not lie in the span of the kernel generators.

    In a (co)homology computation this signals a broken differential,
    since d followed by d must vanish.
    """


class NotExactError(TricertError):
    """An operation requiring an exact candidate triangle received a non-exact one."""


class SizeLimitError(TricertError):
    """A finite enumeration would exceed the configured size bound."""


class CoeffsNotReducedError(TricertError):
    """Bimodule coefficients do not vanish on the zero object."""


class NotNaturalError(TricertError):
    """A would-be bimodule morphism fails naturality."""


class NoFillInError(TricertError):
    """No fill-in exists for a bracket diagram; indicates an inconsistent input."""

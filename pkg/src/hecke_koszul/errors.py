"""Exception types shared across the package."""


class HeckeError(Exception):
    """Base class for every error raised by hecke_koszul."""


class RootOfUnity(HeckeError):
    """A q-integer needed as a normalizer vanishes."""


class PoleAtQ(HeckeError):
    """A rational function was evaluated at a zero of its denominator."""


class DimensionError(HeckeError, ValueError):
    pass


class SingularHalfAdjoint(HeckeError):
    pass


class AxiomViolation(HeckeError):
    """A candidate R-matrix fails one of the Hecke axioms.

    ``report`` carries the full :class:`~hecke_koszul.hecke.AxiomReport`.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class MismatchedQ(HeckeError, ValueError):
    pass


class ParseError(HeckeError, ValueError):
    pass


class Undetermined(HeckeError):
    """Not enough terms to certify a linear recurrence."""


class RootSignViolation(HeckeError):
    pass


class NotOneDimensional(HeckeError):
    pass


class NotCommuting(HeckeError):
    pass


class ResourceCapExceeded(HeckeError):
    """A tensor power would exceed the configured ambient dimension cap."""

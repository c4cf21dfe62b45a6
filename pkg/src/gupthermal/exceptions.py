"""Exception and warning types raised by gupthermal."""


class GupError(Exception):
    """Base class for all gupthermal errors."""


class DomainError(GupError, ValueError):
    """Input outside the domain of a closed form (e.g. a <= b, n too small)."""


class CausticError(GupError, ValueError):
    """Real-time propagator evaluated where sin(omega T) vanishes."""


class OrderOneError(GupError, ValueError):
    """Renyi order too close to 1; use the von Neumann entropy instead."""


class NoMaximumError(GupError):
    """The entropy-maximum condition has no sign change in the scanned range."""


class GridTooSmallError(GupError, ValueError):
    """Quadrature box does not contain the thermal kernel."""


class PerturbativeWarning(UserWarning):
    """The O(alpha) correction is not small compared with the alpha = 0 value."""

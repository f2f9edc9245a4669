"""Errors raised by the Lorentz spectrum toolkit."""


class LSpectrumError(Exception):
    """Base class for every error the toolkit raises on purpose."""


class ZeroPolynomial(LSpectrumError):
    def __init__(self, message="All polynomial coefficients vanish at the trim tolerance."):
        super().__init__(message)


class InvalidMu(LSpectrumError):
    def __init__(self, mu, message=None):
        self.mu = mu
        super().__init__(message or f"mu={mu!r} is not an eigenvalue of the leading 2x2 block.")


class UnsupportedFamily(LSpectrumError):
    pass


class DomainError(LSpectrumError):
    pass


class NotOrthogonal(LSpectrumError):
    pass


class NotCanonical(LSpectrumError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"Map is not of the form A -> (Q+[1]) A (Q^T+[1]): {reason}")


class NumericalFailure(LSpectrumError):
    pass


class InputError(LSpectrumError):
    """Malformed matrix/operator input (bad JSON, wrong shape, non-finite entries)."""

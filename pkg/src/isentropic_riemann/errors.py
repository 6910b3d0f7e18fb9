"""Exception hierarchy shared by the solver modules."""


class RiemannError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RiemannError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class AdmissibilityError(DomainError):
    """A star density lies on the wrong branch of a wave curve."""


class RegimeError(DomainError):
    """Riemann data do not belong to the regime a formula is stated for."""


class DegenerateJumpError(DomainError):
    """A discontinuity is degenerate or violates the jump conditions."""


class ConfigurationError(RiemannError, ValueError):
    """Invalid grid, scheme or experiment configuration."""


class NumericalError(RiemannError, ArithmeticError):
    """A numerical procedure failed (non-convergence, blow-up, CFL)."""


class ConvergenceError(NumericalError):
    pass


class CFLError(NumericalError):
    pass


class BlowupError(NumericalError):
    pass

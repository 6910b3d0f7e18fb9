"""Exact and finite-volume Riemann solutions of the isentropic Euler equations
in the vanishing-pressure limit."""

from .errors import (
    AdmissibilityError,
    BlowupError,
    CFLError,
    ConfigurationError,
    ConvergenceError,
    DegenerateJumpError,
    DomainError,
    NumericalError,
    RegimeError,
    RiemannError,
)
from .exact import ExactSolution, RiemannProblem, WavePattern, classify, sample, solve, vacuum_check
from .gas import ConservedState, GasState, PolytropicEos
from .pressureless import delta_diagnostic, sample_pressureless, solve_pressureless
from .vanishing import critical_kappa, kappa_rs, kappa_sr, regime, sweep

__version__ = "0.1.0"

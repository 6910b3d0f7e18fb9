"""Exact solution of the Riemann problem for the isentropic Euler equations.

The intermediate state is the intersection of the decreasing left curve and
the increasing right curve (see :mod:`.curves`); the self-similar solution
is then assembled from shocks and centred rarefaction fans.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate

from . import curves
from .errors import ConvergenceError, DomainError
from .gas import GasState, PolytropicEos, eigenvalues, riemann_invariants, sound_speed

_EPS = np.finfo(float).eps


class WavePattern(str, enum.Enum):
    TWO_SHOCK = "TwoShock"
    TWO_RAREFACTION = "TwoRarefaction"
    SHOCK_RAREFACTION = "ShockRarefaction"
    RAREFACTION_SHOCK = "RarefactionShock"
    VACUUM_TWO_RAREFACTION = "VacuumTwoRarefaction"
    CONSTANT = "Constant"
    # single-wave patterns: the other family has zero strength
    SHOCK1 = "Shock1"
    RAREFACTION1 = "Rarefaction1"
    SHOCK2 = "Shock2"
    RAREFACTION2 = "Rarefaction2"

    @property
    def is_degenerate(self) -> bool:
        return self in _SINGLE_WAVE

    def __str__(self) -> str:
        return self.value


_SINGLE_WAVE = frozenset(
    {WavePattern.SHOCK1, WavePattern.RAREFACTION1, WavePattern.SHOCK2, WavePattern.RAREFACTION2}
)

_PATTERNS = {
    ("shock", "shock"): WavePattern.TWO_SHOCK,
    ("rarefaction", "rarefaction"): WavePattern.TWO_RAREFACTION,
    ("shock", "rarefaction"): WavePattern.SHOCK_RAREFACTION,
    ("rarefaction", "shock"): WavePattern.RAREFACTION_SHOCK,
    ("shock", None): WavePattern.SHOCK1,
    ("rarefaction", None): WavePattern.RAREFACTION1,
    (None, "shock"): WavePattern.SHOCK2,
    (None, "rarefaction"): WavePattern.RAREFACTION2,
    (None, None): WavePattern.CONSTANT,
}
_KINDS = {pattern: kinds for kinds, pattern in _PATTERNS.items()}


@dataclass(frozen=True)
class RiemannProblem:
    left: GasState
    right: GasState

    def __post_init__(self):
        if not (self.left.rho > 0.0 and self.right.rho > 0.0):
            raise DomainError("Riemann data must have positive densities")

    @classmethod
    def from_values(cls, rho_l: float, v_l: float, rho_r: float, v_r: float) -> "RiemannProblem":
        return cls(GasState(rho_l, v_l), GasState(rho_r, v_r))


@dataclass(frozen=True)
class Wave:
    """A shock (``head == tail``) or a rarefaction fan occupying ``[head, tail]``."""

    family: int
    kind: str
    head: float
    tail: float

    @property
    def speed(self) -> float:
        return self.head


@dataclass(frozen=True)
class ExactSolution:
    problem: RiemannProblem
    eos: PolytropicEos
    pattern: WavePattern
    star: Optional[GasState]
    wave1: Optional[Wave]
    wave2: Optional[Wave]

    @property
    def waves(self) -> tuple[Wave, ...]:
        return tuple(w for w in (self.wave1, self.wave2) if w is not None)

    @property
    def wave_speeds(self) -> list[tuple[str, object]]:
        """``(kind, speed)`` for shocks, ``(kind, (head, tail))`` for fans."""
        out = []
        for w in self.waves:
            label = f"{w.kind}{w.family}"
            out.append((label, w.speed if w.kind == "shock" else (w.head, w.tail)))
        return out

    def speeds(self) -> list[float]:
        """Flattened wave speeds, left to right."""
        return [s for w in self.waves for s in ((w.head,) if w.kind == "shock" else (w.head, w.tail))]

    def sample(self, xi: float) -> GasState:
        return sample(self, xi)


def _scale(problem: RiemannProblem) -> float:
    return max(1.0, abs(problem.left.v), abs(problem.right.v))


def vacuum_check(eos: PolytropicEos, problem: RiemannProblem) -> bool:
    """True when the two rarefaction curves do not meet at positive density."""
    left, right = problem.left, problem.right
    gap = 2.0 / (eos.gamma - 1.0) * (sound_speed(eos, left.rho) + sound_speed(eos, right.rho))
    return right.v - left.v >= gap


def _mismatch(eos: PolytropicEos, problem: RiemannProblem, rho: float) -> float:
    return curves.left_curve_v(eos, problem.left, rho) - curves.right_curve_v(eos, problem.right, rho)


def classify(eos: PolytropicEos, problem: RiemannProblem, tie_rtol: float = 1e-12) -> WavePattern:
    """Wave pattern of the Riemann solution.

    The sign of the curve mismatch at ``rho_left`` (``rho_right``) decides
    whether the 1-wave (2-wave) is a shock or a rarefaction; a mismatch within
    ``tie_rtol`` of the velocity scale means that wave has zero strength.
    """
    left, right = problem.left, problem.right
    if left == right:
        return WavePattern.CONSTANT
    if vacuum_check(eos, problem):
        return WavePattern.VACUUM_TWO_RAREFACTION
    tie = tie_rtol * _scale(problem)
    f_left = left.v - curves.right_curve_v(eos, right, left.rho)
    f_right = curves.left_curve_v(eos, left, right.rho) - right.v

    def kind(f: float) -> Optional[str]:
        if abs(f) <= tie:
            return None
        return "shock" if f > 0.0 else "rarefaction"

    return _PATTERNS[kind(f_left), kind(f_right)]


def find_star_density(
    eos: PolytropicEos,
    problem: RiemannProblem,
    tol: float = 1e-12,
    rho_atol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Root of the curve mismatch by Newton's method safeguarded with bisection.

    Raises :class:`ConvergenceError` if no root is found within ``max_iter``
    iterations or the data admit no positive-density intersection.
    """
    left, right = problem.left, problem.right
    vtol = tol * _scale(problem)

    def f(x: float) -> float:
        return _mismatch(eos, problem, x)

    lo = min(left.rho, right.rho) * 1e-8
    if f(lo) <= 0.0:
        lo = 0.0
        if f(lo) <= 0.0:
            raise ConvergenceError("rarefaction curves do not intersect (vacuum)")
    hi = max(left.rho, right.rho)
    doublings = 0
    while f(hi) > 0.0:
        lo, hi = hi, 2.0 * hi
        doublings += 1
        if doublings > 1100 or not math.isfinite(hi):
            raise ConvergenceError("could not bracket the star density")

    x = min(max(0.5 * (left.rho + right.rho), lo), hi)
    if not lo < x < hi:
        x = 0.5 * (lo + hi)
    dx = math.inf
    for _ in range(max_iter):
        fx = f(x)
        if fx == 0.0:
            return x
        if fx > 0.0:
            lo = x
        else:
            hi = x
        if abs(fx) <= vtol and abs(dx) <= rho_atol + 4.0 * _EPS * x:
            return x
        if hi - lo <= 4.0 * _EPS * hi:
            if abs(fx) <= vtol:
                return x
            raise ConvergenceError(
                f"bracket collapsed at rho*={x!r} with residual {fx:.3e}"
            )
        slope = curves.left_curve_dv(eos, left, x) - curves.right_curve_dv(eos, right, x)
        x_new = x - fx / slope if slope != 0.0 else math.nan
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        dx = x_new - x
        x = x_new
    raise ConvergenceError(f"no convergence in {max_iter} iterations (last rho*={x!r})")


def _fan1_state(eos: PolytropicEos, phi1: float, xi: float) -> GasState:
    g = eos.gamma
    c = max((g - 1.0) * (phi1 - xi) / (g + 1.0), 0.0)
    return GasState((c * c / (eos.kappa * g)) ** (1.0 / (g - 1.0)), xi + c)


def _fan2_state(eos: PolytropicEos, phi2: float, xi: float) -> GasState:
    g = eos.gamma
    c = max((g - 1.0) * (xi - phi2) / (g + 1.0), 0.0)
    return GasState((c * c / (eos.kappa * g)) ** (1.0 / (g - 1.0)), xi - c)


def solve(
    eos: PolytropicEos,
    problem: RiemannProblem,
    tol: float = 1e-12,
    tie_rtol: float = 1e-12,
    max_iter: int = 200,
) -> ExactSolution:
    """Solve the Riemann problem.

    Parameters
    ----------
    eos : PolytropicEos
        Pressure law.
    problem : RiemannProblem
        Left and right states.
    tol : float
        Velocity tolerance on the curve intersection, relative to
        ``max(1, |v_left|, |v_right|)``.
    tie_rtol : float
        Tolerance under which a wave is declared to have zero strength.
    max_iter : int
        Iteration cap of the root finder.

    Returns
    -------
    ExactSolution
        Pattern, intermediate state and wave speeds. For a single-wave
        pattern the intermediate state is set to the anchor of the missing
        wave.
    """
    left, right = problem.left, problem.right
    pattern = classify(eos, problem, tie_rtol)

    if pattern is WavePattern.CONSTANT:
        return ExactSolution(problem, eos, pattern, left, None, None)

    if pattern is WavePattern.VACUUM_TWO_RAREFACTION:
        v_tail1, v_head2 = curves.vacuum_endpoints(eos, left, right)
        w1 = Wave(1, "rarefaction", eigenvalues(eos, left)[0], v_tail1)
        w2 = Wave(2, "rarefaction", v_head2, eigenvalues(eos, right)[1])
        return ExactSolution(problem, eos, pattern, None, w1, w2)

    kind1, kind2 = _KINDS[pattern]
    if kind1 is None:
        star = left
    elif kind2 is None:
        star = right
    else:
        rho = find_star_density(eos, problem, tol=tol, max_iter=max_iter)
        v = 0.5 * (curves.left_curve_v(eos, left, rho) + curves.right_curve_v(eos, right, rho))
        star = GasState(rho, v)

    w1 = w2 = None
    if kind1 == "shock":
        s = curves.shock_speed(eos, left, star)
        w1 = Wave(1, "shock", s, s)
    elif kind1 == "rarefaction":
        w1 = Wave(1, "rarefaction", eigenvalues(eos, left)[0], eigenvalues(eos, star)[0])
    if kind2 == "shock":
        s = curves.shock_speed(eos, right, star)
        w2 = Wave(2, "shock", s, s)
    elif kind2 == "rarefaction":
        w2 = Wave(2, "rarefaction", eigenvalues(eos, star)[1], eigenvalues(eos, right)[1])
    return ExactSolution(problem, eos, pattern, star, w1, w2)


_VACUUM = GasState(0.0, 0.0)


def sample(sol: ExactSolution, xi: float) -> GasState:
    """State at ``xi = x / t``. A point exactly on a shock gets the state behind it
    on the right; the vacuum region reports ``v = 0``."""
    left, right = sol.problem.left, sol.problem.right
    if sol.pattern is WavePattern.CONSTANT:
        return left
    eos = sol.eos
    w1, w2 = sol.wave1, sol.wave2

    if w1 is not None:
        if xi < w1.head:
            return left
        if w1.kind == "rarefaction" and xi < w1.tail:
            return _fan1_state(eos, riemann_invariants(eos, left)[0], xi)

    if sol.star is None:
        if xi < w2.head:
            return _VACUUM
    elif w2 is None:
        return sol.star
    elif w2.kind == "shock":
        return right if xi >= w2.speed else sol.star
    elif xi <= w2.head:
        return sol.star

    if xi >= w2.tail:
        return right
    return _fan2_state(eos, riemann_invariants(eos, right)[1], xi)


def sample_profile(sol: ExactSolution, xi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Density and velocity arrays sampled at every entry of ``xi``."""
    states = [sample(sol, float(s)) for s in np.asarray(xi, dtype=float).ravel()]
    rho = np.array([s.rho for s in states]).reshape(np.shape(xi))
    v = np.array([s.v for s in states]).reshape(np.shape(xi))
    return rho, v


def density_integral(sol: ExactSolution, t: float, a: float, b: float) -> float:
    """``int_a^b rho(x, t) dx`` for the exact solution (fans by adaptive quadrature)."""
    if not t > 0.0:
        raise DomainError("time must be positive")
    lo, hi = a / t, b / t
    pts = sorted({s for s in sol.speeds() if lo < s < hi} | {lo, hi})
    total = 0.0
    for p, q in zip(pts[:-1], pts[1:]):
        mid = sample(sol, 0.5 * (p + q))
        if sol.star is not None and _is_constant_piece(sol, p, q):
            total += mid.rho * (q - p)
        else:
            total += integrate.quad(lambda s: sample(sol, s).rho, p, q, epsabs=1e-13, epsrel=1e-12)[0]
    return t * total


def _is_constant_piece(sol: ExactSolution, p: float, q: float) -> bool:
    for w in sol.waves:
        if w.kind == "rarefaction" and p < w.tail and q > w.head:
            return False
    return True

"""Critical pressure coefficients and behaviour of the solution as kappa -> 0.

For ``v- > v+`` a 1-shock/2-rarefaction solution turns into a two-shock
solution once ``kappa`` drops below ``kappa_sr``; for ``v- < v+`` a
1-rarefaction/2-shock solution turns into a two-rarefaction solution below
``kappa_rs``. At the critical value the second wave has zero strength.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .errors import DomainError, RegimeError, RiemannError
from .exact import RiemannProblem, WavePattern, classify, solve, vacuum_check
from .gas import PolytropicEos


class CriticalKind(str, enum.Enum):
    SR = "SR"
    RS = "RS"


@dataclass(frozen=True)
class CriticalKappa:
    value: float
    kind: CriticalKind
    problem: RiemannProblem
    gamma: float

    def __post_init__(self):
        if not self.value > 0.0:
            raise DomainError("critical kappa must be positive")
        vl, vr = self.problem.left.v, self.problem.right.v
        if self.kind is CriticalKind.SR and not vl > vr:
            raise RegimeError("kappa_sr requires v- > v+")
        if self.kind is CriticalKind.RS and not vl < vr:
            raise RegimeError("kappa_rs requires v- < v+")


@dataclass(frozen=True)
class SweepRecord:
    kappa: float
    pattern: Optional[WavePattern]
    rho_star: float
    v_star: float
    vacuum: bool
    max_density: Optional[float] = None
    error: Optional[str] = None


def kappa_sr(problem: RiemannProblem, gamma: float) -> float:
    """Coefficient at which a 1-shock/2-rarefaction solution loses its 2-wave."""
    rl, vl = problem.left.rho, problem.left.v
    rr, vr = problem.right.rho, problem.right.v
    if not vl > vr:
        raise RegimeError("kappa_sr requires v- > v+")
    if not rr > rl:
        raise RegimeError("kappa_sr requires rho+ > rho- (1-shock/2-rarefaction data)")
    return rl * rr * (vl - vr) ** 2 / ((rr**gamma - rl**gamma) * (rr - rl))


def kappa_rs(problem: RiemannProblem, gamma: float) -> float:
    """Coefficient at which a 1-rarefaction/2-shock solution loses its 2-wave."""
    rl, vl = problem.left.rho, problem.left.v
    rr, vr = problem.right.rho, problem.right.v
    if not vl < vr:
        raise RegimeError("kappa_rs requires v- < v+")
    if not rl > rr:
        raise RegimeError("kappa_rs requires rho- > rho+ (1-rarefaction/2-shock data)")
    a = 0.5 * (gamma - 1.0)
    return ((vr - vl) * (gamma - 1.0) / (2.0 * math.sqrt(gamma) * (rl**a - rr**a))) ** 2


def kappa_vacuum(problem: RiemannProblem, gamma: float) -> float:
    """Largest kappa for which the rarefaction curves fail to meet (0 if v- >= v+)."""
    dv = problem.right.v - problem.left.v
    if dv <= 0.0:
        return 0.0
    a = 0.5 * (gamma - 1.0)
    s = problem.left.rho**a + problem.right.rho**a
    return dv**2 * (gamma - 1.0) ** 2 / (4.0 * gamma * s**2)


def critical_kappa(problem: RiemannProblem, gamma: float) -> Optional[CriticalKappa]:
    """The critical coefficient for these data, or ``None`` outside both critical regimes."""
    left, right = problem.left, problem.right
    if left.v > right.v and right.rho > left.rho:
        value, kind = kappa_sr(problem, gamma), CriticalKind.SR
    elif left.v < right.v and left.rho > right.rho:
        value, kind = kappa_rs(problem, gamma), CriticalKind.RS
    else:
        return None
    # a velocity gap at the edge of double precision underflows to zero
    if not value > 0.0:
        return None
    return CriticalKappa(value, kind, problem, gamma)


def regime(
    problem: RiemannProblem, gamma: float, kappa: float, rtol: float = 1e-12
) -> WavePattern:
    """Wave pattern predicted from the position of ``kappa`` relative to the
    critical coefficient; data outside those regimes defer to
    :func:`~.exact.classify`."""
    eos = PolytropicEos(kappa, gamma)
    crit = critical_kappa(problem, gamma)
    if crit is None:
        return classify(eos, problem)
    if vacuum_check(eos, problem):
        return WavePattern.VACUUM_TWO_RAREFACTION
    k = crit.value
    if crit.kind is CriticalKind.SR:
        above, at, below = WavePattern.SHOCK_RAREFACTION, WavePattern.SHOCK1, WavePattern.TWO_SHOCK
    else:
        above, at, below = WavePattern.RAREFACTION_SHOCK, WavePattern.RAREFACTION1, WavePattern.TWO_RAREFACTION
    if abs(kappa - k) <= rtol * k:
        return at
    return above if kappa > k else below


def geometric_schedule(kappa0: float, ratio: float = 0.5, kappa_min: float = 1e-4) -> list[float]:
    """``kappa0 * ratio**n`` for n = 0, 1, ... while the value stays >= ``kappa_min``."""
    if not (kappa0 > 0.0 and 0.0 < ratio < 1.0 and kappa_min > 0.0):
        raise DomainError("need kappa0 > 0, 0 < ratio < 1, kappa_min > 0")
    out = []
    k = kappa0
    while k >= kappa_min * (1.0 - 1e-12):
        out.append(k)
        k *= ratio
    return out


def check_schedule(schedule: Sequence[float]) -> None:
    if len(schedule) == 0:
        raise DomainError("empty kappa schedule")
    if any(not k > 0.0 for k in schedule):
        raise DomainError("kappa schedule entries must be positive")
    if any(b >= a for a, b in zip(schedule, schedule[1:])):
        raise DomainError("kappa schedule must be strictly decreasing")


def _record(problem: RiemannProblem, gamma: float, kappa: float) -> SweepRecord:
    try:
        sol = solve(PolytropicEos(kappa, gamma), problem)
    except RiemannError as exc:
        return SweepRecord(kappa, None, math.nan, math.nan, False, error=f"{type(exc).__name__}: {exc}")
    if sol.star is None:
        return SweepRecord(kappa, sol.pattern, 0.0, math.nan, True)
    return SweepRecord(kappa, sol.pattern, sol.star.rho, sol.star.v, False)


def sweep(
    problem: RiemannProblem,
    gamma: float,
    kappa_schedule: Iterable[float],
    map_fn: Callable = map,
) -> list[SweepRecord]:
    """Exact solutions along a strictly decreasing kappa schedule.

    Solver failures are stored in ``SweepRecord.error`` and do not stop the
    sweep. ``map_fn`` may be an executor's ``map`` for parallel evaluation;
    records come back in schedule order either way.
    """
    schedule = [float(k) for k in kappa_schedule]
    check_schedule(schedule)
    return list(map_fn(lambda k: _record(problem, gamma, k), schedule))

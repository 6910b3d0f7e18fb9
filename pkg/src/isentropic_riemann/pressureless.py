"""Riemann problem for pressureless gas dynamics (sticky particles).

Colliding data (``v- > v+``) produce a delta-shock carrying a point mass that
grows linearly in time; separating data (``v- < v+``) produce two contact
discontinuities travelling at ``v-`` and ``v+`` with vacuum between them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .exact import RiemannProblem
from .fv import FieldState, Grid1D
from .gas import GasState


class PressurelessTag(str, enum.Enum):
    DELTA = "Delta"
    VACUUM_CONTACTS = "VacuumContacts"
    CONTACT = "Contact"
    CONSTANT = "Constant"


@dataclass(frozen=True)
class DeltaShock:
    sigma: float
    weight_rate: float
    u_delta: float

    def weight(self, t: float) -> float:
        return self.weight_rate * t


@dataclass(frozen=True)
class PressurelessSolution:
    tag: PressurelessTag
    problem: RiemannProblem
    delta: Optional[DeltaShock] = None
    contact_speeds: Optional[tuple[float, float]] = None


def solve_pressureless(problem: RiemannProblem) -> PressurelessSolution:
    """Solve the pressureless Riemann problem.

    In the delta-shock case the front moves at the square-root-density
    weighted mean ``sigma = (sqrt(rho-) v- + sqrt(rho+) v+) / (sqrt(rho-) + sqrt(rho+))``
    and accumulates mass at rate ``sqrt(rho- rho+) (v- - v+)``. These values
    satisfy the generalised Rankine-Hugoniot relations checked by
    :func:`rankine_hugoniot_residuals`, with the entropy condition
    ``v+ <= sigma <= v-``.
    """
    left, right = problem.left, problem.right
    if not (left.rho > 0.0 and right.rho > 0.0):
        raise DomainError("densities must be positive")
    if left == right:
        return PressurelessSolution(PressurelessTag.CONSTANT, problem, DeltaShock(left.v, 0.0, left.v))
    if left.v == right.v:
        return PressurelessSolution(PressurelessTag.CONTACT, problem, DeltaShock(left.v, 0.0, left.v))
    if left.v < right.v:
        return PressurelessSolution(PressurelessTag.VACUUM_CONTACTS, problem, contact_speeds=(left.v, right.v))
    sl, sr = math.sqrt(left.rho), math.sqrt(right.rho)
    sigma = (sl * left.v + sr * right.v) / (sl + sr)
    # clamp against rounding so the entropy ordering holds exactly
    sigma = min(max(sigma, right.v), left.v)
    rate = sl * sr * (left.v - right.v)
    return PressurelessSolution(PressurelessTag.DELTA, problem, DeltaShock(sigma, rate, sigma))


def rankine_hugoniot_residuals(sol: PressurelessSolution) -> tuple[float, float]:
    """Mass and momentum residuals of the generalised jump relations.

    ``dw/dt = sigma [rho] - [rho v]`` and
    ``d(w u)/dt = sigma [rho v] - [rho v^2]`` with ``[q] = q+ - q-``.
    """
    if sol.delta is None:
        raise DomainError("no delta front in this solution")
    left, right = sol.problem.left, sol.problem.right
    d = sol.delta
    mass = left.rho * (left.v - d.sigma) + right.rho * (d.sigma - right.v) - d.weight_rate
    mom = (
        left.rho * left.v * (left.v - d.sigma)
        + right.rho * right.v * (d.sigma - right.v)
        - d.weight_rate * d.u_delta
    )
    return mass, mom


_VACUUM = GasState(0.0, 0.0)


def sample_pressureless(sol: PressurelessSolution, xi: float) -> GasState:
    """State at ``xi = x/t``; the singular mass of a delta front is not sampled."""
    left, right = sol.problem.left, sol.problem.right
    if sol.tag is PressurelessTag.VACUUM_CONTACTS:
        vl, vr = sol.contact_speeds
        if xi < vl:
            return left
        return right if xi >= vr else _VACUUM
    if sol.tag is PressurelessTag.CONSTANT:
        return left
    return left if xi < sol.delta.sigma else right


def delta_diagnostic(
    field: FieldState, grid: Grid1D, window_halfwidth: float, center: float
) -> float:
    """Excess mass in ``[center - h, center + h]`` over the far-field background.

    The background density is the mean of the two boundary cells, so an
    undisturbed step contributes nothing when centred on the window. Cells
    partially covered by the window are weighted by their overlap.
    """
    h = window_halfwidth
    if not h > 0.0:
        raise DomainError("window half-width must be positive")
    a, b = center - h, center + h
    if a < grid.x_min or b > grid.x_max:
        raise DomainError("window extends outside the grid")
    edges = grid.edges
    overlap = np.clip(np.minimum(edges[1:], b) - np.maximum(edges[:-1], a), 0.0, None)
    mass = math.fsum(field.rho * overlap)
    background = 0.5 * (field.rho[0] + field.rho[-1])
    return max(mass - background * 2.0 * h, 0.0)

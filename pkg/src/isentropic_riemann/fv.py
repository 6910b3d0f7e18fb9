"""First-order conservative finite-volume scheme of Lax-Friedrichs type.

Numerical flux::

    F(i+1/2) = (f(u_i) + f(u_{i+1})) / 2 - theta/2 * dx/dt * (u_{i+1} - u_i)

``theta = 1`` is the classical Lax-Friedrichs scheme; ``theta = 1/2`` halves
its numerical viscosity (the modified Lax-Friedrichs scheme) and is the
default. Stability and positivity need ``dt * max|lambda| / dx <= theta``.
Boundaries are zero-gradient (one ghost cell per side).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BlowupError, CFLError, ConfigurationError, DomainError, NumericalError
from .exact import ExactSolution, RiemannProblem, sample_profile
from .gas import (
    DEFAULT_VACUUM_FLOOR,
    PolytropicEos,
    pressure_array,
    sound_speed_array,
    velocity_array,
)


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    nx: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ConfigurationError("x_min must be smaller than x_max")
        if int(self.nx) != self.nx or self.nx < 4:
            raise ConfigurationError("nx must be an integer >= 4")

    @classmethod
    def from_dx(cls, x_min: float, x_max: float, dx: float) -> "Grid1D":
        n = (x_max - x_min) / dx
        if abs(n - round(n)) > 1e-9 * n:
            raise ConfigurationError("dx does not divide the domain length")
        return cls(x_min, x_max, int(round(n)))

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.nx

    @property
    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.nx) + 0.5) * self.dx

    @property
    def edges(self) -> np.ndarray:
        return self.x_min + np.arange(self.nx + 1) * self.dx


@dataclass(frozen=True)
class FieldState:
    """Cell averages at ``time`` plus the running conservation ledger.

    ``boundary_*`` accumulate the net amount that entered through the two
    domain ends; ``floor_*`` the amount injected by vacuum flooring.
    """

    time: float
    rho: np.ndarray
    momentum: np.ndarray
    initial_mass: float = 0.0
    initial_momentum: float = 0.0
    boundary_mass: float = 0.0
    boundary_momentum: float = 0.0
    floor_mass: float = 0.0
    floor_momentum: float = 0.0

    def __post_init__(self):
        if self.rho.shape != self.momentum.shape:
            raise DomainError("rho and momentum must have the same shape")

    def velocity(self, vacuum_floor: float = DEFAULT_VACUUM_FLOOR) -> np.ndarray:
        return velocity_array(self.rho, self.momentum, vacuum_floor)


@dataclass(frozen=True)
class SchemeConfig:
    dt: Optional[float] = None
    cfl: Optional[float] = None
    theta: float = 0.5
    vacuum_floor: float = DEFAULT_VACUUM_FLOOR
    boundary: str = "outflow"

    def __post_init__(self):
        if self.dt is not None and self.cfl is not None:
            raise ConfigurationError("specify either dt or cfl, not both")
        if self.dt is None and self.cfl is None:
            object.__setattr__(self, "cfl", 0.4)
        if self.dt is not None and not self.dt > 0.0:
            raise ConfigurationError("dt must be positive")
        if not 0.0 < self.theta <= 1.0:
            raise ConfigurationError("theta must lie in (0, 1]")
        if self.cfl is not None and not 0.0 < self.cfl <= self.theta:
            raise ConfigurationError("cfl must lie in (0, theta]")
        if not self.vacuum_floor >= 0.0:
            raise ConfigurationError("vacuum_floor must be nonnegative")
        if self.boundary != "outflow":
            raise ConfigurationError(f"unsupported boundary {self.boundary!r}")


def _totals(rho: np.ndarray, momentum: np.ndarray, dx: float) -> tuple[float, float]:
    return math.fsum(rho) * dx, math.fsum(momentum) * dx


def init(grid: Grid1D, problem: RiemannProblem, eos: PolytropicEos) -> FieldState:
    """Cell averages of the Riemann data; ``x = 0`` must be a cell edge."""
    k = -grid.x_min / grid.dx
    if not (0.0 < k < grid.nx) or abs(k - round(k)) > 1e-9 * max(1.0, k):
        raise ConfigurationError("x = 0 must be an interior cell edge of the grid")
    k = int(round(k))
    rho = np.empty(grid.nx)
    mom = np.empty(grid.nx)
    rho[:k], mom[:k] = problem.left.rho, problem.left.rho * problem.left.v
    rho[k:], mom[k:] = problem.right.rho, problem.right.rho * problem.right.v
    m0, p0 = _totals(rho, mom, grid.dx)
    return FieldState(0.0, rho, mom, initial_mass=m0, initial_momentum=p0)


def max_wave_speed(field: FieldState, eos: PolytropicEos, vacuum_floor: float = DEFAULT_VACUUM_FLOOR) -> float:
    v = velocity_array(field.rho, field.momentum, vacuum_floor)
    return float(np.max(np.abs(v) + sound_speed_array(eos, field.rho)))


def time_step(field: FieldState, grid: Grid1D, eos: PolytropicEos, config: SchemeConfig) -> float:
    if config.dt is not None:
        return config.dt
    speed = max_wave_speed(field, eos, config.vacuum_floor)
    if not speed > 0.0:
        raise NumericalError("zero wave speed: CFL time step undefined")
    return config.cfl * grid.dx / speed


def _physical_flux(eos, rho, mom, vacuum_floor):
    v = velocity_array(rho, mom, vacuum_floor)
    return mom, mom * v + pressure_array(eos, rho), np.abs(v) + sound_speed_array(eos, rho)


def step(
    field: FieldState,
    grid: Grid1D,
    eos: PolytropicEos,
    config: SchemeConfig,
    dt: Optional[float] = None,
) -> FieldState:
    """Advance one time step (``dt`` overrides the configured step)."""
    if dt is None:
        dt = time_step(field, grid, eos, config)
    dx = grid.dx
    rho = np.concatenate(([field.rho[0]], field.rho, [field.rho[-1]]))
    mom = np.concatenate(([field.momentum[0]], field.momentum, [field.momentum[-1]]))
    f_rho, f_mom, speed = _physical_flux(eos, rho, mom, config.vacuum_floor)

    courant = dt * float(np.max(speed)) / dx
    if courant > config.theta * (1.0 + 1e-12):
        raise CFLError(f"Courant number {courant:.4g} exceeds theta={config.theta}")

    nu = 0.5 * config.theta * dx / dt
    flux_rho = 0.5 * (f_rho[:-1] + f_rho[1:]) - nu * (rho[1:] - rho[:-1])
    flux_mom = 0.5 * (f_mom[:-1] + f_mom[1:]) - nu * (mom[1:] - mom[:-1])

    lam = dt / dx
    new_rho = field.rho - lam * (flux_rho[1:] - flux_rho[:-1])
    new_mom = field.momentum - lam * (flux_mom[1:] - flux_mom[:-1])
    if not (np.all(np.isfinite(new_rho)) and np.all(np.isfinite(new_mom))):
        raise BlowupError(f"non-finite values after step from t={field.time!r}")

    floor_mass = field.floor_mass
    floor_mom = field.floor_momentum
    negative = new_rho < 0.0
    if negative.any():
        floor_mass -= math.fsum(new_rho[negative]) * dx
        new_rho[negative] = 0.0
    dry = new_rho <= config.vacuum_floor
    if dry.any():
        floor_mom -= math.fsum(new_mom[dry]) * dx
        new_mom[dry] = 0.0

    return dataclasses.replace(
        field,
        time=field.time + dt,
        rho=new_rho,
        momentum=new_mom,
        boundary_mass=field.boundary_mass + dt * (flux_rho[0] - flux_rho[-1]),
        boundary_momentum=field.boundary_momentum + dt * (flux_mom[0] - flux_mom[-1]),
        floor_mass=floor_mass,
        floor_momentum=floor_mom,
    )


def run(
    grid: Grid1D,
    problem: RiemannProblem,
    eos: PolytropicEos,
    config: SchemeConfig,
    t_final: float,
) -> FieldState:
    """Integrate the Riemann data up to exactly ``t_final``."""
    if not t_final > 0.0:
        raise DomainError("t_final must be positive")
    field = init(grid, problem, eos)
    while field.time < t_final:
        try:
            dt = time_step(field, grid, eos, config)
            last = field.time + dt >= t_final * (1.0 - 1e-14)
            if last:
                dt = t_final - field.time
            field = step(field, grid, eos, config, dt)
        except NumericalError as exc:
            exc.time = field.time
            raise
        if last:
            field = dataclasses.replace(field, time=t_final)
    return field


def conservation_errors(field: FieldState, grid: Grid1D) -> tuple[float, float]:
    """Relative mismatch between current totals and initial totals plus the
    recorded boundary and flooring contributions (mass, momentum)."""
    mass, mom = _totals(field.rho, field.momentum, grid.dx)
    mass_err = mass - (field.initial_mass + field.boundary_mass + field.floor_mass)
    mom_err = mom - (field.initial_momentum + field.boundary_momentum + field.floor_momentum)
    mass_scale = max(abs(field.initial_mass), abs(mass), 1e-300)
    mom_scale = max(abs(field.initial_momentum), abs(mom), math.fsum(np.abs(field.momentum)) * grid.dx, 1e-300)
    return abs(mass_err) / mass_scale, abs(mom_err) / mom_scale


def l1_error(field: FieldState, grid: Grid1D, exact: ExactSolution, t: Optional[float] = None) -> float:
    """``sum_i (|rho_i - rho(x_i/t)| + |m_i - m(x_i/t)|) dx`` against the exact solution."""
    t = field.time if t is None else t
    if not t > 0.0:
        raise DomainError("l1_error needs t > 0")
    rho_ex, v_ex = sample_profile(exact, grid.centers / t)
    err = np.abs(field.rho - rho_ex) + np.abs(field.momentum - rho_ex * v_ex)
    return math.fsum(err) * grid.dx


def exact_field(grid: Grid1D, exact: ExactSolution, t: float) -> FieldState:
    """Exact solution sampled at cell centres, packaged as a field."""
    rho, v = sample_profile(exact, grid.centers / t)
    return FieldState(t, rho, rho * v)


def min_density_between(field: FieldState, grid: Grid1D, a: float, b: float) -> float:
    """Smallest cell density among cells whose centres lie in ``[a, b]``."""
    x = grid.centers
    mask = (x >= a) & (x <= b)
    if not mask.any():
        raise DomainError("no cell centre in the requested interval")
    return float(field.rho[mask].min())


def max_density(field: FieldState) -> float:
    return float(field.rho.max())

"""Polytropic equation of state and pointwise gas-dynamics helpers.

Pressure law ``p = kappa * rho**gamma``. Scalar functions take and return
floats; the ``*_array`` variants are vectorised for the finite-volume code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

DEFAULT_VACUUM_FLOOR = 1e-12


@dataclass(frozen=True)
class PolytropicEos:
    kappa: float
    gamma: float

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa > 0.0):
            raise DomainError(f"kappa must be positive, got {self.kappa!r}")
        if not (math.isfinite(self.gamma) and self.gamma > 1.0):
            raise DomainError(f"gamma must exceed 1, got {self.gamma!r}")

    def with_kappa(self, kappa: float) -> "PolytropicEos":
        return PolytropicEos(kappa, self.gamma)


@dataclass(frozen=True)
class GasState:
    """Primitive state; ``rho == 0`` is vacuum and ``v`` is then meaningless."""

    rho: float
    v: float

    def __post_init__(self):
        if not self.rho >= 0.0:
            raise DomainError(f"density must be nonnegative, got {self.rho!r}")
        if not math.isfinite(self.v):
            raise DomainError(f"velocity must be finite, got {self.v!r}")


@dataclass(frozen=True)
class ConservedState:
    rho: float
    momentum: float

    def __post_init__(self):
        if not self.rho >= 0.0:
            raise DomainError(f"density must be nonnegative, got {self.rho!r}")


def _check_rho(rho: float) -> None:
    if not rho >= 0.0:
        raise DomainError(f"density must be nonnegative, got {rho!r}")


def pressure(eos: PolytropicEos, rho: float) -> float:
    _check_rho(rho)
    return eos.kappa * rho**eos.gamma


def sound_speed(eos: PolytropicEos, rho: float) -> float:
    """Return ``c = sqrt(p'(rho)) = sqrt(gamma * kappa * rho**(gamma - 1))``."""
    _check_rho(rho)
    if rho == 0.0:
        return 0.0
    return math.sqrt(eos.gamma * eos.kappa * rho ** (eos.gamma - 1.0))


def eigenvalues(eos: PolytropicEos, state: GasState) -> tuple[float, float]:
    c = sound_speed(eos, state.rho)
    return state.v - c, state.v + c


def riemann_invariants(eos: PolytropicEos, state: GasState) -> tuple[float, float]:
    """Return ``(phi1, phi2) = (v + 2c/(gamma-1), v - 2c/(gamma-1))``.

    ``phi1`` is constant across a 1-rarefaction, ``phi2`` across a
    2-rarefaction.
    """
    w = 2.0 * sound_speed(eos, state.rho) / (eos.gamma - 1.0)
    return state.v + w, state.v - w


def to_conserved(state: GasState) -> ConservedState:
    return ConservedState(state.rho, state.rho * state.v)


def to_primitive(
    cons: ConservedState, vacuum_floor: float = DEFAULT_VACUUM_FLOOR
) -> GasState:
    if cons.rho <= vacuum_floor:
        return GasState(cons.rho, 0.0)
    return GasState(cons.rho, cons.momentum / cons.rho)


# vectorised helpers used by the finite-volume scheme


def pressure_array(eos: PolytropicEos, rho: np.ndarray) -> np.ndarray:
    return eos.kappa * np.power(rho, eos.gamma)


def sound_speed_array(eos: PolytropicEos, rho: np.ndarray) -> np.ndarray:
    return np.sqrt(eos.gamma * eos.kappa * np.power(rho, eos.gamma - 1.0))


def velocity_array(
    rho: np.ndarray, momentum: np.ndarray, vacuum_floor: float = DEFAULT_VACUUM_FLOOR
) -> np.ndarray:
    """Velocity ``m / rho`` with the vacuum convention ``v = 0`` below the floor."""
    v = np.zeros_like(momentum)
    wet = rho > vacuum_floor
    np.divide(momentum, rho, out=v, where=wet)
    return v

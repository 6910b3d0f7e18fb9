"""Rarefaction and shock curves through a given state.

Each curve gives the velocity ``v*`` of the states with density ``rho*`` that
can be joined to an anchor state by a single wave: the left anchor for
1-waves, the right anchor for 2-waves. The combined ``left_curve_v`` /
``right_curve_v`` pick the admissible branch for every ``rho* >= 0``; the
curves are continuous through the anchor density and are extended to the
vacuum endpoint ``rho* = 0`` on the rarefaction side.
"""

from __future__ import annotations

import math

from .errors import AdmissibilityError, DegenerateJumpError, DomainError
from .gas import GasState, PolytropicEos, pressure


def _power_quotient(a: float, b: float, gamma: float) -> float:
    """``(a**gamma - b**gamma) / (a - b)`` without cancellation; ``b > 0``.

    Equals ``gamma * b**(gamma - 1)`` at ``a == b``.
    """
    d = a - b
    if d == 0.0:
        return gamma * b ** (gamma - 1.0)
    r = d / b
    if abs(r) < 0.5:
        return b**gamma * math.expm1(gamma * math.log1p(r)) / d
    return (a**gamma - b**gamma) / d


def _rarefaction_coeff(eos: PolytropicEos) -> float:
    return 2.0 * math.sqrt(eos.kappa * eos.gamma) / (eos.gamma - 1.0)


def _check_anchor(anchor: GasState) -> None:
    if not anchor.rho > 0.0:
        raise DomainError("anchor state must have positive density")


def rarefaction1_v(eos: PolytropicEos, left: GasState, rho_star: float) -> float:
    """Velocity on the 1-rarefaction curve from ``left``; ``0 <= rho* <= rho_left``."""
    _check_anchor(left)
    if rho_star < 0.0:
        raise DomainError(f"negative star density {rho_star!r}")
    if rho_star > left.rho:
        raise AdmissibilityError("1-rarefaction requires rho* <= rho_left")
    a = 0.5 * (eos.gamma - 1.0)
    return left.v + _rarefaction_coeff(eos) * (left.rho**a - rho_star**a)


def rarefaction2_v(eos: PolytropicEos, right: GasState, rho_star: float) -> float:
    """Velocity on the 2-rarefaction curve from ``right``; ``0 <= rho* <= rho_right``."""
    _check_anchor(right)
    if rho_star < 0.0:
        raise DomainError(f"negative star density {rho_star!r}")
    if rho_star > right.rho:
        raise AdmissibilityError("2-rarefaction requires rho* <= rho_right")
    a = 0.5 * (eos.gamma - 1.0)
    return right.v - _rarefaction_coeff(eos) * (right.rho**a - rho_star**a)


def _shock_jump(eos: PolytropicEos, anchor_rho: float, rho_star: float) -> float:
    # |v* - v_anchor| across a shock, Rankine-Hugoniot with Lax selection
    q = _power_quotient(rho_star, anchor_rho, eos.gamma)
    return math.sqrt(eos.kappa * q / (rho_star * anchor_rho)) * (rho_star - anchor_rho)


def shock1_v(eos: PolytropicEos, left: GasState, rho_star: float) -> float:
    """Velocity on the 1-shock curve from ``left``; ``rho* >= rho_left``."""
    _check_anchor(left)
    if rho_star < left.rho:
        raise AdmissibilityError("1-shock requires rho* >= rho_left")
    return left.v - _shock_jump(eos, left.rho, rho_star)


def shock2_v(eos: PolytropicEos, right: GasState, rho_star: float) -> float:
    """Velocity on the 2-shock curve from ``right``; ``rho* >= rho_right``."""
    _check_anchor(right)
    if rho_star < right.rho:
        raise AdmissibilityError("2-shock requires rho* >= rho_right")
    return right.v + _shock_jump(eos, right.rho, rho_star)


def left_curve_v(eos: PolytropicEos, left: GasState, rho_star: float) -> float:
    if rho_star <= left.rho:
        return rarefaction1_v(eos, left, rho_star)
    return shock1_v(eos, left, rho_star)


def right_curve_v(eos: PolytropicEos, right: GasState, rho_star: float) -> float:
    if rho_star <= right.rho:
        return rarefaction2_v(eos, right, rho_star)
    return shock2_v(eos, right, rho_star)


def _rarefaction_slope(eos: PolytropicEos, rho_star: float) -> float:
    return math.sqrt(eos.kappa * eos.gamma) * rho_star ** (0.5 * (eos.gamma - 3.0))


def _shock_slope(eos: PolytropicEos, anchor_rho: float, rho_star: float) -> float:
    # d/drho of _shock_jump, written so that no difference quotient appears
    g = eos.gamma
    q = _power_quotient(rho_star, anchor_rho, g)
    num = g * rho_star ** (g - 2.0) + q * anchor_rho / rho_star**2
    return math.sqrt(eos.kappa / anchor_rho) * num / (2.0 * math.sqrt(q / rho_star))


def left_curve_dv(eos: PolytropicEos, left: GasState, rho_star: float) -> float:
    """Derivative of :func:`left_curve_v`; always negative."""
    _check_anchor(left)
    if not rho_star > 0.0:
        raise DomainError("derivative requires rho* > 0")
    if rho_star <= left.rho:
        return -_rarefaction_slope(eos, rho_star)
    return -_shock_slope(eos, left.rho, rho_star)


def right_curve_dv(eos: PolytropicEos, right: GasState, rho_star: float) -> float:
    """Derivative of :func:`right_curve_v`; always positive."""
    _check_anchor(right)
    if not rho_star > 0.0:
        raise DomainError("derivative requires rho* > 0")
    if rho_star <= right.rho:
        return _rarefaction_slope(eos, rho_star)
    return _shock_slope(eos, right.rho, rho_star)


def vacuum_endpoints(eos: PolytropicEos, left: GasState, right: GasState) -> tuple[float, float]:
    """Velocities where the left and right rarefaction curves reach ``rho* = 0``."""
    return rarefaction1_v(eos, left, 0.0), rarefaction2_v(eos, right, 0.0)


def shock_speed(
    eos: PolytropicEos, ahead: GasState, star: GasState, rtol: float = 1e-9
) -> float:
    """Speed of the discontinuity joining ``ahead`` and ``star``.

    The speed comes from the mass jump condition. The momentum jump condition
    is then checked and a :class:`DegenerateJumpError` is raised when it fails
    by more than ``rtol`` relative to the flux magnitudes, so that pairs of
    states not lying on a common shock curve are rejected.
    """
    d_rho = star.rho - ahead.rho
    if d_rho == 0.0:
        raise DegenerateJumpError("equal densities: shock speed undefined")
    m0, m1 = ahead.rho * ahead.v, star.rho * star.v
    sigma = (m1 - m0) / d_rho
    f0 = m0 * ahead.v + pressure(eos, ahead.rho)
    f1 = m1 * star.v + pressure(eos, star.rho)
    residual = sigma * (m1 - m0) - (f1 - f0)
    scale = abs(f0) + abs(f1) + abs(sigma) * (abs(m0) + abs(m1))
    if abs(residual) > rtol * max(scale, 1e-300):
        raise DegenerateJumpError(
            f"momentum jump condition violated (residual {residual:.3e})"
        )
    return sigma


def h1(rho: float, rho_minus: float, gamma: float) -> float:
    """``(rho**gamma - rho_minus**gamma) * (1 - rho_minus / rho)``.

    Increasing on ``rho > rho_minus``; equals ``rho_minus * (v- - v*)**2 / kappa``
    along the 1-shock curve.
    """
    if not rho > 0.0:
        raise DomainError("h1 requires rho > 0")
    return (rho**gamma - rho_minus**gamma) * (1.0 - rho_minus / rho)


def h2(rho: float, rho_minus: float, gamma: float) -> float:
    """``rho**((gamma-1)/2) - rho_minus**((gamma-1)/2)``; increasing on ``rho > 0``."""
    if not rho > 0.0:
        raise DomainError("h2 requires rho > 0")
    a = 0.5 * (gamma - 1.0)
    return rho**a - rho_minus**a

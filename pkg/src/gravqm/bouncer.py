"""Bound states of a particle above an infinite floor in a linear potential.

The potential is an infinite wall at z <= 0 plus V = F*z for z > 0 with
F = m_g*g.  In the dimensionless coordinate z_tilde = alpha*z, with
alpha = (2*m_i*F/hbar^2)**(1/3), the spatial equation becomes the Airy
equation and the spectrum is fixed by the negative zeros of Ai: the n-th
level has dimensionless energy E_tilde_n = -(n-th zero) and physical energy
E_n = E_tilde_n * (hbar^2 F^2 / (2 m_i))**(1/3).

Normalization constants and the probability of finding the particle beyond
its classical turning point are evaluated with the closed-form tail integral
of Ai^2 (see :func:`gravqm.airy.ai_squared_tail`); quadrature is used only as
a test oracle, so no truncation error enters the shipped numbers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .airy import ai_negative_zero, ai_squared_tail, airy_ai
from .core import PhysicalSystem
from .errors import ParameterError


@dataclass(frozen=True)
class BouncerLevel:
    """One quantized level: index, energies, normalization, tail probability."""

    n: int
    e_tilde: float
    energy: float
    norm_const: float
    p_outside: float


def _check_index(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParameterError(f"level index must be an integer, got {n!r}")
    if n < 1 or n > 50:
        raise ParameterError(f"level index must be in 1..50, got {n}")
    return n


def alpha(system: PhysicalSystem) -> float:
    """Inverse length scale (2*m_i*F/hbar^2)**(1/3) with F = m_g*g."""
    force = system.m_g * system.g
    if force <= 0.0:
        raise ParameterError("alpha requires m_g > 0 and g > 0")
    return (2.0 * system.m_i * force / system.hbar**2) ** (1.0 / 3.0)


def energy_scale(system: PhysicalSystem) -> float:
    """(hbar^2 F^2 / (2 m_i))**(1/3), the unit of the physical energies."""
    force = system.m_g * system.g
    if force <= 0.0:
        raise ParameterError("energy scale requires m_g > 0 and g > 0")
    return (system.hbar**2 * force**2 / (2.0 * system.m_i)) ** (1.0 / 3.0)


def probability_outside(n: int) -> float:
    """Probability of finding level n beyond its classical turning point.

    Ratio of tail integrals of Ai^2, from 0 and from the n-th negative zero;
    dimensionless, hence independent of the field strength.
    """
    e_tilde = -ai_negative_zero(_check_index(n))
    return ai_squared_tail(0.0) / ai_squared_tail(-e_tilde)


def level(system: PhysicalSystem, n: int) -> BouncerLevel:
    """Fully populated level n of the given system."""
    n = _check_index(n)
    e_tilde = -ai_negative_zero(n)
    norm_sq = 1.0 / ai_squared_tail(-e_tilde)
    return BouncerLevel(
        n=n,
        e_tilde=e_tilde,
        energy=e_tilde * energy_scale(system),
        norm_const=math.sqrt(norm_sq),
        p_outside=ai_squared_tail(0.0) * norm_sq,
    )


def eigenfunction(lvl: BouncerLevel, z_tilde: float) -> float:
    """Normalized spatial wave function A_n*Ai(z_tilde - E_tilde_n).

    Region I (z_tilde < 0) is behind the infinite wall; the value there is an
    exact 0, not a sampled one.
    """
    if z_tilde < 0.0:
        return 0.0
    return lvl.norm_const * airy_ai(z_tilde - lvl.e_tilde)


def stationary_state(
    lvl: BouncerLevel, z_tilde: float, t: float, system: PhysicalSystem
) -> complex:
    """Time-dependent stationary state chi_n(z_tilde)*exp(-i*E_n*t/hbar)."""
    return eigenfunction(lvl, z_tilde) * cmath.exp(-1j * lvl.energy * t / system.hbar)

"""Unit conventions, parameter bundles, grids, and the complex field container.

Two unit modes are supported and nothing is hard-coded:

* natural units: ``hbar = 1`` and a caller-chosen mass scale (use
  :func:`make_natural_system`), convenient for the dimensionless tables;
* SI units: the caller supplies CODATA constants explicitly, needed for
  neutron interferometry numbers.

Sign convention used everywhere: z increases upward, the uniform field acts
along -z (potential ``V = m_g * g * z``), and a positive frame acceleration
``a`` means the primed frame accelerates downward, so its coordinate is
``z' = z + v*t + a*t**2/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericError, ParameterError

# Tolerance for the free-fall identity a*m_i = m_g*g.  This is an algebraic
# check, not a physical one, so it sits just above double rounding.
FREE_FALL_RTOL = 1e-12


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class PhysicalSystem:
    """Masses, field strength, frame kinematics and Planck constant.

    ``m_i`` is the inertial mass, ``m_g`` the gravitational mass, ``g`` the
    local field strength, ``v`` and ``a`` the initial velocity and constant
    acceleration of the falling (primed) frame.
    """

    m_i: float
    m_g: float
    g: float = 0.0
    v: float = 0.0
    a: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("m_i", "m_g", "g", "v", "a", "hbar"):
            _require_finite(name, getattr(self, name))
        if self.m_i <= 0:
            raise ParameterError(f"m_i must be positive, got {self.m_i}")
        if self.hbar <= 0:
            raise ParameterError(f"hbar must be positive, got {self.hbar}")
        if self.m_g < 0:
            raise ParameterError(f"m_g must be non-negative, got {self.m_g}")

    def free_fall_condition(self, rel_tol: float = FREE_FALL_RTOL) -> bool:
        """True iff the frame acceleration cancels the field: a*m_i = m_g*g."""
        lhs = self.a * self.m_i
        rhs = self.m_g * self.g
        scale = max(abs(lhs), abs(rhs))
        return abs(lhs - rhs) <= rel_tol * scale

    @property
    def weight(self) -> float:
        """Force magnitude m_g*g, the slope of the linear potential."""
        return self.m_g * self.g


def make_natural_system(mass_scale: float) -> PhysicalSystem:
    """Natural-unit system: hbar = 1, m_i = m_g = mass_scale, kinematics zeroed.

    The caller sets g, v, a afterwards (``dataclasses.replace`` works).
    """
    mass_scale = _require_finite("mass_scale", mass_scale)
    if mass_scale <= 0:
        raise ParameterError(f"mass_scale must be positive, got {mass_scale}")
    return PhysicalSystem(m_i=mass_scale, m_g=mass_scale, g=0.0, v=0.0, a=0.0, hbar=1.0)


@dataclass(frozen=True)
class Grid:
    """Uniform 1-D spatial grid plus time-stepping parameters."""

    z_min: float
    z_max: float
    n_points: int
    dt: float = 0.0
    n_steps: int = 0
    _z: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _require_finite("z_min", self.z_min)
        _require_finite("z_max", self.z_max)
        if self.n_points < 3:
            raise ParameterError(f"n_points must be >= 3, got {self.n_points}")
        if self.z_max <= self.z_min:
            raise ParameterError("z_max must exceed z_min")
        if self.n_steps < 0:
            raise ParameterError(f"n_steps must be non-negative, got {self.n_steps}")
        if self.n_steps > 0 and self.dt <= 0:
            raise ParameterError("dt must be positive when n_steps > 0")
        z = np.linspace(self.z_min, self.z_max, self.n_points)
        z.flags.writeable = False
        object.__setattr__(self, "_z", z)

    @property
    def dz(self) -> float:
        return (self.z_max - self.z_min) / (self.n_points - 1)

    @property
    def z(self) -> np.ndarray:
        """Grid coordinates (read-only view)."""
        return self._z

    @property
    def total_time(self) -> float:
        return self.dt * self.n_steps


@dataclass(frozen=True)
class ComplexField:
    """A complex wave function sampled on a uniform grid.

    Instances are immutable: the sample array is copied in and marked
    read-only, so fields can be shared freely between threads.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.n_points,):
            raise ParameterError(
                f"values must have shape ({self.grid.n_points},), got {values.shape}"
            )
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def norm_squared(self) -> float:
        return norm_squared(self)

    def is_normalized(self, tol: float = 1e-10) -> bool:
        return abs(self.norm_squared() - 1.0) <= tol

    def normalized(self) -> "ComplexField":
        """Rescaled copy with unit norm."""
        n2 = self.norm_squared()
        if n2 <= 0.0:
            raise NumericError("cannot normalize a zero field")
        return ComplexField(self.grid, self.values / math.sqrt(n2))

    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2


def norm_squared(f: ComplexField) -> float:
    """Trapezoidal integral of |psi|^2 over the grid."""
    if not np.all(np.isfinite(f.values)):
        raise NumericError("field contains NaN or infinite samples")
    return float(np.trapezoid(np.abs(f.values) ** 2, dx=f.grid.dz))

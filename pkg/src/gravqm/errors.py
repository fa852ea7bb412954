"""Exception types shared across the package."""

from __future__ import annotations


class ParameterError(ValueError):
    """An input violates a documented precondition."""


class NumericError(RuntimeError):
    """A computation failed numerically (non-convergence, NaN, overflow)."""


class BoundaryContactError(NumericError):
    """A propagated wave packet reached the edge of its grid."""

    def __init__(self, time: float, amplitude: float):
        self.time = time
        self.amplitude = amplitude
        super().__init__(
            f"wave packet touched the grid boundary at t={time:.6g} "
            f"(edge amplitude {amplitude:.3e} > 1e-06); enlarge the domain"
        )

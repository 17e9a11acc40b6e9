"""Paraxial ray tracing through a transverse refractive-index gradient.

In the paraxial limit a ray with transverse position x(z) and slope
theta(z) = dx/dz obeys

    d(theta)/dz = d(Re n)/dx

evaluated at the current x.  The medium is uniform along z, so the only
z-dependence enters through the ray's own motion.  Integration is
classical RK4 with a fixed step; for the step counts used here the global
error is far below the quantities being compared (see the step-halving
test).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .medium import ControlField, MediumParams, grad_index

__all__ = [
    "RayState",
    "Trajectory",
    "integrate_gradient",
    "trace_ray",
    "exit_angle",
    "deflection_estimate",
]

# |theta| beyond this marks the trace as outside the small-angle regime.
PARAXIAL_LIMIT = 0.5


@dataclass(frozen=True)
class RayState:
    z: float
    x: float
    angle: float


@dataclass
class Trajectory:
    states: list[RayState]
    paraxial_violation: bool

    @property
    def entry(self) -> RayState:
        return self.states[0]

    @property
    def exit(self) -> RayState:
        return self.states[-1]


def integrate_gradient(
    gradient: Callable[[float], float],
    x0: float,
    theta0: float,
    length: float,
    n_steps: int,
) -> Trajectory:
    """Integrate x'' = gradient(x) over [0, length] with RK4.

    ``gradient`` maps transverse position to d(Re n)/dx.  Returns the full
    trajectory including the launch state; z is strictly increasing.
    """
    if length <= 0.0:
        raise ValueError("length must be positive")
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    dz = length / n_steps
    x, v = x0, theta0
    states = [RayState(0.0, x, v)]
    violated = abs(v) >= PARAXIAL_LIMIT
    for i in range(n_steps):
        k1v = gradient(x)
        k1x = v
        k2v = gradient(x + 0.5 * dz * k1x)
        k2x = v + 0.5 * dz * k1v
        k3v = gradient(x + 0.5 * dz * k2x)
        k3x = v + 0.5 * dz * k2v
        k4v = gradient(x + dz * k3x)
        k4x = v + dz * k3v
        x += dz * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0
        v += dz * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
        if abs(v) >= PARAXIAL_LIMIT:
            violated = True
        states.append(RayState((i + 1) * dz, x, v))
    return Trajectory(states, violated)


def trace_ray(
    delta: float,
    x0: float,
    theta0: float,
    p: MediumParams,
    c: ControlField,
    n_steps: int = 10_000,
) -> Trajectory:
    """Trace one probe ray through the cell at two-photon detuning ``delta``."""
    if n_steps < 100:
        raise ValueError("n_steps must be at least 100")

    def gradient(x: float) -> float:
        return grad_index(delta, x, p, c)

    return integrate_gradient(gradient, x0, theta0, p.cell_length, n_steps)


def exit_angle(trajectory: Trajectory) -> float:
    return trajectory.exit.angle


def deflection_estimate(
    delta: float, x0: float, p: MediumParams, c: ControlField
) -> float:
    """Thin-cell deflection angle: gradient at the entry point times length.

    Ignores the ray's transverse walk inside the cell, so it is only an
    order-of-magnitude figure when the deflection is large.
    """
    return p.cell_length * grad_index(delta, x0, p, c)

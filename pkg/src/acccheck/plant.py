"""Longitudinal kinematics for the ego and lead vehicles.

Each vehicle is a double integrator driven by a piecewise-constant
acceleration.  Velocities are clamped at zero; when the clamp fires inside a
step the position is advanced only up to the exact stopping point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union


class SimulationError(RuntimeError):
    """Raised when the simulation state stops being finite."""


@dataclass(frozen=True)
class VehicleState:
    x: float
    v: float
    a: float = 0.0

    def __post_init__(self) -> None:
        _require_finite(x=self.x, v=self.v, a=self.a)
        if self.v < 0:
            raise ValueError(f"velocity must be non-negative, got {self.v}")


@dataclass(frozen=True)
class ConstantSpeed:
    v0: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.v0) and self.v0 >= 0):
            raise ValueError(f"v0 must be finite and >= 0, got {self.v0}")

    def speed(self, t: float) -> float:
        return self.v0


@dataclass(frozen=True)
class SineSpeed:
    v0: float
    amplitude: float
    angular_frequency: float

    def __post_init__(self) -> None:
        _require_finite(v0=self.v0, amplitude=self.amplitude,
                        angular_frequency=self.angular_frequency)
        if self.v0 < 0:
            raise ValueError(f"v0 must be >= 0, got {self.v0}")
        if abs(self.amplitude) > self.v0:
            raise ValueError("amplitude larger than v0 would drive the lead backwards")

    def speed(self, t: float) -> float:
        return self.v0 + self.amplitude * math.sin(self.angular_frequency * t)


LeadProfile = Union[ConstantSpeed, SineSpeed]


def _require_finite(**values: float) -> None:
    bad = {k: v for k, v in values.items() if not math.isfinite(v)}
    if bad:
        raise SimulationError(f"non-finite simulation values: {bad}")


def step_ego(state: VehicleState, a_cmd: float, dt: float) -> VehicleState:
    """Advance the ego vehicle by one period under a constant command."""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    _require_finite(x=state.x, v=state.v, a_cmd=a_cmd, dt=dt)

    v_next = state.v + a_cmd * dt
    if v_next >= 0:
        x_next = state.x + state.v * dt + 0.5 * a_cmd * dt * dt
        return VehicleState(x_next, v_next, a_cmd)

    # Stops inside the step: integrate up to the stop time, then stand still.
    if a_cmd < 0:
        t_stop = state.v / -a_cmd
        x_next = state.x + state.v * t_stop + 0.5 * a_cmd * t_stop * t_stop
    else:
        x_next = state.x
    return VehicleState(x_next, 0.0, a_cmd)


def step_lead(t: float, profile: LeadProfile, state: VehicleState, dt: float) -> VehicleState:
    """Advance the lead vehicle from ``t`` to ``t + dt`` along its speed profile.

    Position uses the trapezoidal rule over the start and end speeds.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    _require_finite(t=t, x=state.x, v=state.v, dt=dt)

    v_next = max(0.0, profile.speed(t + dt))
    x_next = state.x + 0.5 * (state.v + v_next) * dt
    return VehicleState(x_next, v_next, (v_next - state.v) / dt)

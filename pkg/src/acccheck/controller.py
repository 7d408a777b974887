"""Adaptive cruise control law: two PID loops selected by a mode switch.

Speed mode tracks the set velocity; space mode restores the safe gap to the
lead vehicle.  Only one loop drives the actuator at any step.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace


class Mode(enum.IntEnum):
    SPEED = 1
    SPACE = -1


class ModeRule(str, enum.Enum):
    # Space mode iff the gap is below the safe distance.
    GAP = "gap"
    # Literal two-condition switch; space wins ties, neither keeps the previous mode.
    LATCHING = "latching"


@dataclass(frozen=True)
class PidGains:
    kp: float
    ki: float = 0.0
    kd: float = 0.0

    def __post_init__(self) -> None:
        for name in ("kp", "ki", "kd"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {value}")


@dataclass(frozen=True)
class PidState:
    integral: float = 0.0
    prev_error: float = 0.0


@dataclass(frozen=True)
class ControllerConfig:
    V_set: float
    D_default: float = 10.0
    T_gap: float = 1.4
    speed_pid: PidGains = PidGains(0.5, 0.0, 0.0)
    space_pid: PidGains = PidGains(0.5, 0.02, 0.4)
    a_min: float = -2.0
    a_max: float = 2.0
    windup_limit: float = 10.0
    mode_rule: ModeRule = ModeRule.GAP

    def __post_init__(self) -> None:
        if not self.D_default > 0:
            raise ValueError("D_default must be positive")
        if not self.T_gap > 0:
            raise ValueError("T_gap must be positive")
        if not self.a_min < 0 < self.a_max:
            raise ValueError("acceleration limits must satisfy a_min < 0 < a_max")
        if not self.V_set >= 0:
            raise ValueError("V_set must be non-negative")
        if not self.windup_limit > 0:
            raise ValueError("windup_limit must be positive")
        object.__setattr__(self, "mode_rule", ModeRule(self.mode_rule))


@dataclass(frozen=True)
class SwitchSignals:
    e_v: float
    e_d: float


@dataclass(frozen=True)
class ControllerState:
    mode: Mode = Mode.SPEED
    speed: PidState = field(default_factory=PidState)
    space: PidState = field(default_factory=PidState)


@dataclass(frozen=True)
class ControlOutput:
    a_cmd: float
    mode: Mode
    d_rel: float
    d_safe: float


def relative_distance(x_lead: float, x_ego: float) -> float:
    return x_lead - x_ego


def safe_distance(v_ego: float, cfg: ControllerConfig) -> float:
    return cfg.D_default + cfg.T_gap * v_ego


def select_mode(signals: SwitchSignals, prev: Mode, rule: ModeRule = ModeRule.GAP) -> Mode:
    if rule is ModeRule.GAP:
        return Mode.SPACE if signals.e_d > 0 else Mode.SPEED
    if signals.e_d > 0:
        return Mode.SPACE
    if signals.e_v < 0:
        return Mode.SPEED
    return prev


def pid_step(gains: PidGains, st: PidState, error: float, dt: float,
             windup_limit: float = math.inf) -> tuple[float, PidState]:
    """One positional PID update; returns the command and the new state."""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    integral = min(max(st.integral + error * dt, -windup_limit), windup_limit)
    derivative = (error - st.prev_error) / dt
    command = gains.kp * error + gains.ki * integral + gains.kd * derivative
    return command, PidState(integral, error)


def controller_step(cfg: ControllerConfig, state: ControllerState, x_ego: float,
                    v_ego: float, x_lead: float, dt: float) -> tuple[ControlOutput, ControllerState]:
    d_rel = relative_distance(x_lead, x_ego)
    d_safe = safe_distance(v_ego, cfg)
    signals = SwitchSignals(e_v=cfg.V_set - v_ego, e_d=d_safe - d_rel)
    mode = select_mode(signals, state.mode, cfg.mode_rule)

    speed_st, space_st = state.speed, state.space
    if mode is not state.mode:
        if mode is Mode.SPACE:
            speed_st = replace(speed_st, integral=0.0)
        else:
            space_st = replace(space_st, integral=0.0)

    if mode is Mode.SPEED:
        raw, speed_st = pid_step(cfg.speed_pid, speed_st, signals.e_v, dt, cfg.windup_limit)
    else:
        raw, space_st = pid_step(cfg.space_pid, space_st, d_rel - d_safe, dt, cfg.windup_limit)

    a_cmd = min(max(raw, cfg.a_min), cfg.a_max)
    return ControlOutput(a_cmd, mode, d_rel, d_safe), ControllerState(mode, speed_st, space_st)

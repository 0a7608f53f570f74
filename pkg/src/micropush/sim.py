"""Deterministic fixed-step 2D plant.

Rolling translation with slip and step-out, hard-disc contact pushing,
spin-induced vortex advection of the object, and optional additive
Gaussian observation noise (truth always evolves noiselessly).

Units: micrometres, seconds, Hz; image coordinates (y down). A visually
clockwise sweep on screen corresponds to an increasing atan2(dy, dx)
angle in this frame.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from typing import Optional

from micropush.controller import ControllerConfig, Mode, PushController
from micropush.field import ActuationState
from micropush.geometry import Vec2

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class WorldState:
    """Ground-truth poses of robot and object discs, image coordinates."""

    robot: Vec2
    object: Vec2
    robot_radius: float = 5.0
    object_radius: float = 5.0
    time: float = 0.0

    @property
    def gap(self) -> float:
        d = math.hypot(self.object[0] - self.robot[0], self.object[1] - self.robot[1])
        return d - (self.robot_radius + self.object_radius)


@dataclass(frozen=True)
class PlantConfig:
    """Plant calibration.

    slip_factor scales the ideal rolling speed v = 2*pi*f*r; the default
    matches the observed open-loop traversal rate (538 um in 31.85 s at
    15 Hz). vortex_gain scales the object's angular advection speed
    during an in-place spin.
    """

    slip_factor: float = 0.0359
    stepout_hz: float = 60.0
    vortex_gain: float = 0.3
    noise_std: float = 0.0
    dt: float = 1.0 / 24.0
    post_stepout_decay: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.slip_factor <= 1.0:
            raise ValueError("slip_factor must lie in (0, 1]")
        if self.dt <= 0.0:
            raise ValueError("dt must be positive")
        if self.stepout_hz <= 0.0:
            raise ValueError("stepout_hz must be positive")
        if self.noise_std < 0.0:
            raise ValueError("noise_std must be >= 0")


def rolling_speed(f: float, cfg: PlantConfig, r: float) -> float:
    """Translation speed of the rolling robot at field frequency f.

    Linear in f up to the step-out frequency; beyond it the robot
    de-synchronizes and speed decays as (stepout/f)^decay.
    """
    if f <= cfg.stepout_hz:
        return cfg.slip_factor * TWO_PI * f * r
    peak = cfg.slip_factor * TWO_PI * cfg.stepout_hz * r
    return peak * (cfg.stepout_hz / f) ** cfg.post_stepout_decay


def _resolve_contact(robot: Vec2, obj: Vec2, min_dist: float, fallback_dir: Vec2) -> Vec2:
    """Displace the object along the line of centers so the gap is exactly 0."""
    dx = obj[0] - robot[0]
    dy = obj[1] - robot[1]
    d = math.hypot(dx, dy)
    if d >= min_dist:
        return obj
    if d < 1e-12:
        ux, uy = fallback_dir
    else:
        ux, uy = dx / d, dy / d
    return (robot[0] + min_dist * ux, robot[1] + min_dist * uy)


def advance(w: WorldState, cmd: ActuationState, cfg: PlantConfig) -> WorldState:
    """One dt step of the plant under a fixed actuation command."""
    min_dist = w.robot_radius + w.object_radius
    robot = w.robot
    obj = w.object

    if cmd.gamma <= 0.25 * math.pi or cmd.gamma >= 0.75 * math.pi:
        # In-place spin: the robot stays put and the induced vortex
        # advects the object on a circular arc about the robot center.
        # gamma=180deg spins CW on screen (angle increases in the y-down
        # frame), gamma=0 spins CCW.
        sign = 1.0 if cmd.gamma >= 0.75 * math.pi else -1.0
        dx = obj[0] - robot[0]
        dy = obj[1] - robot[1]
        rho = math.hypot(dx, dy)
        if rho > 1e-12:
            omega = sign * cfg.vortex_gain * TWO_PI * cmd.freq_hz * (w.robot_radius / rho) ** 3
            phi = math.atan2(dy, dx) + omega * cfg.dt
            obj = (robot[0] + rho * math.cos(phi), robot[1] + rho * math.sin(phi))
    else:
        # Roll: commanded alpha carries the travel heading plus pi/2 in
        # the actuation frame; undo the offset and the y negation to get
        # the screen-space direction.
        theta = cmd.alpha - 0.5 * math.pi
        v = rolling_speed(cmd.freq_hz, cfg, w.robot_radius)
        step = v * cfg.dt
        ux, uy = math.cos(theta), -math.sin(theta)
        robot = (robot[0] + step * ux, robot[1] + step * uy)
        obj = _resolve_contact(robot, obj, min_dist, (ux, uy))

    return replace(w, robot=robot, object=obj, time=w.time + cfg.dt)


def observe(w: WorldState, cfg: PlantConfig, rng: random.Random) -> WorldState:
    """Positions as reported to the controller, with optional tracker jitter."""
    if cfg.noise_std <= 0.0:
        return w
    s = cfg.noise_std
    return replace(
        w,
        robot=(w.robot[0] + rng.gauss(0.0, s), w.robot[1] + rng.gauss(0.0, s)),
        object=(w.object[0] + rng.gauss(0.0, s), w.object[1] + rng.gauss(0.0, s)),
    )


@dataclass(frozen=True)
class Frame:
    time: float
    robot: Vec2
    object: Vec2
    mode: Mode
    command: ActuationState


@dataclass
class TrialLog:
    """Per-frame record of one closed-loop run (ground-truth positions)."""

    frames: list[Frame] = field(default_factory=list)
    mode_transitions: list[tuple[float, Mode]] = field(default_factory=list)
    done: bool = False
    done_time: Optional[float] = None


class TimeoutExceeded(RuntimeError):
    """Closed-loop run hit the timeout; carries the partial log."""

    def __init__(self, message: str, log: TrialLog):
        super().__init__(message)
        self.log = log


def run_closed_loop(
    ctrl_cfg: ControllerConfig,
    plant_cfg: PlantConfig,
    init: WorldState,
    seed: int = 0,
    timeout_s: float = 600.0,
) -> TrialLog:
    """Iterate observe -> controller.step -> advance until Done or timeout."""
    rng = random.Random(seed)
    log = TrialLog()
    controller = PushController(ctrl_cfg, observe(init, plant_cfg, rng))
    world = init
    while True:
        if world.time - init.time >= timeout_s:
            log.mode_transitions = list(controller.state.mode_transition_log)
            raise TimeoutExceeded(f"no completion within {timeout_s} s", log)
        obs = observe(world, plant_cfg, rng)
        cmd = controller.step(obs)
        log.frames.append(
            Frame(time=world.time, robot=world.robot, object=world.object,
                  mode=controller.state.mode, command=cmd)
        )
        if controller.is_done:
            log.done = True
            log.done_time = world.time
            log.mode_transitions = list(controller.state.mode_transition_log)
            return log
        world = advance(world, cmd, plant_cfg)

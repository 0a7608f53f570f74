"""Push/spin finite state machine.

One observation in, one actuation command out, at the camera cadence.
Modes: Approach (drive to a point behind the object), Push (roll toward
the current goal), SpinCW / SpinCCW (in-place spin that advects the
object back into the corridor), Done.

Rolling commands use the +pi/2 heading offset: with gamma = 90 deg the
field's rotation axis must be perpendicular to the desired travel
direction, so the commanded alpha is the travel heading plus pi/2.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional, Sequence

from micropush.field import ActuationState, normalize_angle
from micropush.geometry import (
    CorridorGeom,
    DegenerateGeometry,
    SideClass,
    Vec2,
    approach_point,
    build_corridor,
    classify_object,
    distance,
    heading_to,
)

if TYPE_CHECKING:
    from micropush.sim import WorldState

logger = logging.getLogger(__name__)

HALF_PI = 0.5 * math.pi


class Mode(enum.Enum):
    APPROACH = "approach"
    PUSH = "push"
    SPIN_CW = "spin_cw"
    SPIN_CCW = "spin_ccw"
    DONE = "done"


@dataclass(frozen=True)
class ControllerConfig:
    """Tunables of the pushing algorithm.

    arrival_threshold gates both the approach error e_A and the goal
    error e_G. spin_freq_hz defaults to push_freq_hz when omitted.
    """

    corridor_width: float
    push_freq_hz: float
    waypoints: Sequence[Vec2]
    approach_distance: float = 15.0
    arrival_threshold: float = 8.0
    spin_freq_hz: Optional[float] = None

    def __post_init__(self):
        if self.corridor_width <= 0.0:
            raise ValueError("corridor_width must be positive")
        if self.approach_distance < 0.0:
            raise ValueError("approach_distance must be >= 0")
        if self.arrival_threshold <= 0.0:
            raise ValueError("arrival_threshold must be positive")
        if self.push_freq_hz <= 0.0:
            raise ValueError("push_freq_hz must be positive")
        if self.spin_freq_hz is not None and self.spin_freq_hz <= 0.0:
            raise ValueError("spin_freq_hz must be positive")
        if len(self.waypoints) < 1:
            raise ValueError("waypoint list must be non-empty")

    @property
    def spin_freq(self) -> float:
        return self.spin_freq_hz if self.spin_freq_hz is not None else self.push_freq_hz


@dataclass
class ControllerState:
    mode: Mode
    waypoint_index: int = 0
    corridor: Optional[CorridorGeom] = None
    approach_target: Optional[Vec2] = None
    mode_transition_log: list[tuple[float, Mode]] = field(default_factory=list)


class PushController:
    """Synchronous transducer around the pushing state machine.

    Owns one ControllerState; instances are independent and may run in
    parallel across trials, but a single instance is not thread-safe.
    """

    def __init__(self, cfg: ControllerConfig, obs: "WorldState"):
        self.cfg = cfg
        self.state = ControllerState(mode=Mode.APPROACH)
        self._last_push_alpha = 0.0
        self._last_command = ActuationState(alpha=0.0, gamma=HALF_PI, freq_hz=cfg.push_freq_hz)
        # Skip waypoints the object already satisfies (the start node of a
        # drawn trajectory is typically the object's own position).
        idx = 0
        while idx + 1 < len(cfg.waypoints) and distance(obs.object, cfg.waypoints[idx]) < cfg.arrival_threshold:
            idx += 1
        self.state.waypoint_index = idx
        # Approach target frozen at init; it is not re-computed if the
        # object drifts during the approach leg.
        self.state.approach_target = approach_point(
            obs.object, cfg.waypoints[idx], cfg.approach_distance
        )
        self._log_mode(obs.time, Mode.APPROACH)

    # -- public API --------------------------------------------------------

    @property
    def is_done(self) -> bool:
        return self.state.mode is Mode.DONE

    def step(self, obs: "WorldState") -> ActuationState:
        """One control cycle: classify, possibly switch mode, emit a command."""
        st = self.state
        cfg = self.cfg
        if st.mode is Mode.DONE:
            return self._hold()

        # Goal arrival / waypoint chaining applies in every mode. With a
        # threshold larger than the node spacing this can skip several
        # waypoints in one cycle.
        while distance(obs.object, self._goal()) < cfg.arrival_threshold:
            if st.waypoint_index + 1 >= len(cfg.waypoints):
                self._transition(obs.time, Mode.DONE)
                st.corridor = None
                return self._hold()
            st.waypoint_index += 1
            if st.mode is Mode.APPROACH:
                st.approach_target = approach_point(
                    obs.object, self._goal(), cfg.approach_distance
                )
            else:
                st.corridor = build_corridor(obs.robot, self._goal(), cfg.corridor_width)

        if st.mode is Mode.APPROACH:
            assert st.approach_target is not None
            if distance(obs.robot, st.approach_target) < cfg.arrival_threshold:
                self._transition(obs.time, Mode.PUSH)
                st.corridor = build_corridor(obs.robot, self._goal(), cfg.corridor_width)
            else:
                return self._roll_toward(obs.robot, st.approach_target)

        # Push / spin logic against the active corridor.
        assert st.corridor is not None
        side = classify_object(st.corridor, obs.object)
        if side is SideClass.OUTSIDE_LEFT:
            self._transition(obs.time, Mode.SPIN_CW)
            cmd = ActuationState(alpha=self._last_push_alpha, gamma=math.pi, freq_hz=cfg.spin_freq)
        elif side is SideClass.OUTSIDE_RIGHT:
            self._transition(obs.time, Mode.SPIN_CCW)
            cmd = ActuationState(alpha=self._last_push_alpha, gamma=0.0, freq_hz=cfg.spin_freq)
        else:
            self._transition(obs.time, Mode.PUSH)
            cmd = self._roll_toward(obs.robot, st.corridor.goal)
        self._last_command = cmd
        return cmd

    # -- internals ---------------------------------------------------------

    def _goal(self) -> Vec2:
        return self.cfg.waypoints[self.state.waypoint_index]

    def _roll_toward(self, frm: Vec2, to: Vec2) -> ActuationState:
        try:
            alpha = normalize_angle(heading_to(frm, to) + HALF_PI)
        except DegenerateGeometry:
            logger.warning("robot coincides with target %s; holding previous command", to)
            return self._last_command
        self._last_push_alpha = alpha
        cmd = ActuationState(alpha=alpha, gamma=HALF_PI, freq_hz=self.cfg.push_freq_hz)
        self._last_command = cmd
        return cmd

    def _hold(self) -> ActuationState:
        return ActuationState(alpha=self._last_command.alpha, gamma=HALF_PI, freq_hz=0.0)

    def _transition(self, t: float, mode: Mode) -> None:
        if self.state.mode is not mode:
            self.state.mode = mode
            self._log_mode(t, mode)

    def _log_mode(self, t: float, mode: Mode) -> None:
        self.state.mode_transition_log.append((t, mode))

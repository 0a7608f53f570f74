"""Autonomous micro-pushing control library.

Closed-loop pushing of a passive microsphere by a magnetic rolling
microrobot: rotating-field synthesis, guiding-corridor geometry, the
push/spin finite state machine, a deterministic 2D plant, trajectory
metrics, and a benchmark harness.
"""

from micropush.field import ActuationState, FieldSample, CoilDuty, field_vector, rotation_axis, scale_to_coils
from micropush.geometry import (
    CorridorGeom,
    SideClass,
    DegenerateGeometry,
    InvalidWidth,
    heading_to,
    approach_point,
    build_corridor,
    classify_object,
    distance,
)
from micropush.controller import ControllerConfig, ControllerState, Mode, PushController
from micropush.sim import WorldState, PlantConfig, TrialLog, rolling_speed, advance, run_closed_loop, TimeoutExceeded
from micropush.metrics import Trajectory, TrajectoryRole, TrialResult, resample_closest, mean_abs_error, completion_time, chatter_count

__all__ = [
    "ActuationState",
    "FieldSample",
    "CoilDuty",
    "field_vector",
    "rotation_axis",
    "scale_to_coils",
    "CorridorGeom",
    "SideClass",
    "DegenerateGeometry",
    "InvalidWidth",
    "heading_to",
    "approach_point",
    "build_corridor",
    "classify_object",
    "distance",
    "ControllerConfig",
    "ControllerState",
    "Mode",
    "PushController",
    "WorldState",
    "PlantConfig",
    "TrialLog",
    "rolling_speed",
    "advance",
    "run_closed_loop",
    "TimeoutExceeded",
    "Trajectory",
    "TrajectoryRole",
    "TrialResult",
    "resample_closest",
    "mean_abs_error",
    "completion_time",
    "chatter_count",
]

"""Trajectory performance metrics.

Accuracy is the closest-point mean absolute error: the raw object track
is resampled by taking, for each desired node, the nearest recorded
position; MAE is the mean distance between matched pairs. Completion
time spans from push-phase entry to termination (the approach leg is
excluded by default).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from micropush.controller import Mode
from micropush.geometry import Vec2
from micropush.sim import TrialLog


class EmptyTrajectory(ValueError):
    pass


class NotCompleted(RuntimeError):
    """The trial log never reached Done."""


class TrajectoryRole(enum.Enum):
    DESIRED = "desired"
    ACTUAL_RAW = "actual_raw"
    ACTUAL_RESAMPLED = "actual_resampled"


@dataclass(frozen=True)
class Trajectory:
    nodes: tuple[Vec2, ...]
    role: TrajectoryRole

    @classmethod
    def of(cls, nodes: Sequence[Vec2], role: TrajectoryRole) -> "Trajectory":
        return cls(nodes=tuple((float(x), float(y)) for x, y in nodes), role=role)

    def __len__(self) -> int:
        return len(self.nodes)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.nodes, dtype=float).reshape(-1, 2)

    def length(self) -> float:
        if len(self.nodes) < 2:
            return 0.0
        a = self.as_array()
        return float(np.sum(np.linalg.norm(np.diff(a, axis=0), axis=1)))


def resample_closest(raw: Trajectory, desired: Trajectory) -> Trajectory:
    """For each desired node, pick the nearest raw node (earliest on ties)."""
    if len(raw) == 0:
        raise EmptyTrajectory("raw trajectory has no nodes")
    if len(desired) == 0:
        raise EmptyTrajectory("desired trajectory has no nodes")
    a = raw.as_array()  # (Na, 2)
    d = desired.as_array()  # (Nd, 2)
    # argmin returns the first minimizer, which is the earliest raw index
    dists = np.linalg.norm(d[:, None, :] - a[None, :, :], axis=2)
    idx = np.argmin(dists, axis=1)
    return Trajectory.of([tuple(a[i]) for i in idx], TrajectoryRole.ACTUAL_RESAMPLED)


def mean_abs_error(resampled: Trajectory, desired: Trajectory) -> float:
    """Mean Euclidean distance between matched trajectory nodes, in um."""
    if len(resampled) != len(desired):
        raise ValueError(f"length mismatch: {len(resampled)} vs {len(desired)}")
    if len(desired) == 0:
        raise EmptyTrajectory("empty trajectories")
    return float(np.mean(np.linalg.norm(resampled.as_array() - desired.as_array(), axis=1)))


_SPIN_MODES = (Mode.SPIN_CW, Mode.SPIN_CCW)


def completion_time(log: TrialLog, include_approach: bool = False) -> float:
    """Elapsed time from push-phase start to Done.

    With include_approach the clock starts at the first frame instead.
    A run that terminates before any push phase (start already within
    threshold) completes in 0 s.
    """
    if not log.done or log.done_time is None:
        raise NotCompleted("trial log did not reach Done")
    if include_approach:
        if log.frames:
            start = log.frames[0].time
        elif log.mode_transitions:
            start = log.mode_transitions[0][0]
        else:
            start = log.done_time
    else:
        push_times = [t for t, m in log.mode_transitions if m is Mode.PUSH]
        if not push_times:
            return 0.0
        start = push_times[0]
    return log.done_time - start


def chatter_count(log: TrialLog) -> int:
    """Number of push -> spin mode transitions over the run."""
    count = 0
    prev: Optional[Mode] = None
    for _, mode in log.mode_transitions:
        if prev is Mode.PUSH and mode in _SPIN_MODES:
            count += 1
        prev = mode
    return count


@dataclass
class TrialResult:
    mae_um: float
    completion_s: float
    chatter: int
    raw: Trajectory
    resampled: Trajectory
    desired: Trajectory
    config: dict = field(default_factory=dict)
    timed_out: bool = False

    def to_json_dict(self) -> dict:
        return {
            "mae_um": self.mae_um,
            "completion_s": self.completion_s,
            "chatter": self.chatter,
            "timed_out": self.timed_out,
            "raw": [[x, y] for x, y in self.raw.nodes],
            "resampled": [[x, y] for x, y in self.resampled.nodes],
            "desired": [[x, y] for x, y in self.desired.nodes],
            "config": self.config,
        }


def evaluate_log(log: TrialLog, desired: Trajectory, config: Optional[dict] = None,
                 include_approach: bool = False) -> TrialResult:
    """Compute the full metric set for one trial log."""
    raw = Trajectory.of([f.object for f in log.frames], TrajectoryRole.ACTUAL_RAW)
    resampled = resample_closest(raw, desired)
    return TrialResult(
        mae_um=mean_abs_error(resampled, desired),
        completion_s=completion_time(log, include_approach=include_approach),
        chatter=chatter_count(log),
        raw=raw,
        resampled=resampled,
        desired=desired,
        config=dict(config or {}),
        timed_out=False,
    )

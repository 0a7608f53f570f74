"""Benchmark harness: corridor-width x frequency grid and freeform runs.

Reproduces the evaluation protocol: a circular desired trajectory of
N_d = 100 nodes and 538 um polygonal length, pushed at widths
{5, 10, 15} um and frequencies {3, 6, 9, 12, 15} Hz, four trials per
cell, with per-cell mean/std of MAE and completion time. Every cell
seed derives from the base seed so single cells re-run bit-identically.
"""

from __future__ import annotations

import json
import math
import zlib
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from micropush.controller import ControllerConfig
from micropush.geometry import Vec2
from micropush.metrics import (
    Trajectory,
    TrajectoryRole,
    TrialResult,
    chatter_count,
    evaluate_log,
    resample_closest,
    mean_abs_error,
)
from micropush.sim import PlantConfig, TimeoutExceeded, WorldState, run_closed_loop

DEFAULT_WIDTHS = (5.0, 10.0, 15.0)
DEFAULT_FREQS = (3.0, 6.0, 9.0, 12.0, 15.0)
DEFAULT_TRIALS = 4
DEFAULT_NODES = 100
DEFAULT_CIRCLE_LENGTH = 538.0
DEFAULT_NOISE_STD = 0.5  # um; sim-only stand-in for physical trial variance

CSV_HEADER = "corridor_width_um,freq_hz,trial,mae_um,completion_s,chatter"


class ParseError(ValueError):
    pass


def gen_circle(center: Vec2, total_length: float, n: int) -> Trajectory:
    """n equally spaced circle nodes whose closed polygonal perimeter is total_length.

    Node 0 sits at angle 0; angles increase counterclockwise in the
    image frame's own axis convention.
    """
    if n < 3:
        raise ValueError(f"need at least 3 nodes, got {n}")
    if total_length <= 0.0:
        raise ValueError("total_length must be positive")
    chord = total_length / n
    radius = chord / (2.0 * math.sin(math.pi / n))
    nodes = [
        (center[0] + radius * math.cos(2.0 * math.pi * i / n),
         center[1] + radius * math.sin(2.0 * math.pi * i / n))
        for i in range(n)
    ]
    return Trajectory.of(nodes, TrajectoryRole.DESIRED)


def resample_arc_length(nodes: Sequence[Vec2], n: int) -> list[Vec2]:
    """Resample a polyline to n nodes uniformly spaced in arc length."""
    pts = np.asarray(nodes, dtype=float)
    seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    total = s[-1]
    if total <= 0.0:
        raise ValueError("degenerate polyline")
    targets = np.linspace(0.0, total, n)
    out_x = np.interp(targets, s, pts[:, 0])
    out_y = np.interp(targets, s, pts[:, 1])
    return list(zip(out_x.tolist(), out_y.tolist()))


def load_path(path: str | Path, resample_to: Optional[int] = None) -> Trajectory:
    """Load a desired path: one `x y` um pair per line, `#` comments."""
    nodes: list[Vec2] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.split()
            if len(parts) != 2:
                raise ParseError(f"{path}:{lineno}: expected 'x y', got {text!r}")
            try:
                nodes.append((float(parts[0]), float(parts[1])))
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: non-numeric coordinate in {text!r}") from exc
    if len(nodes) < 2:
        raise ParseError(f"{path}: need at least 2 nodes, found {len(nodes)}")
    if resample_to is not None:
        nodes = resample_arc_length(nodes, resample_to)
    return Trajectory.of(nodes, TrajectoryRole.DESIRED)


def bundled_freeform_path() -> Path:
    """The packaged 530 um freeform demo path."""
    return Path(__file__).parent / "data" / "freeform_530um.txt"


@dataclass(frozen=True)
class ExperimentGrid:
    widths: tuple[float, ...] = DEFAULT_WIDTHS
    freqs: tuple[float, ...] = DEFAULT_FREQS
    trials: int = DEFAULT_TRIALS
    trajectory: Trajectory = dc_field(
        default_factory=lambda: gen_circle((300.0, 300.0), DEFAULT_CIRCLE_LENGTH, DEFAULT_NODES)
    )
    seed_base: int = 0
    approach_distance: float = 15.0
    arrival_threshold: float = 8.0
    timeout_s: float = 600.0

    def __post_init__(self):
        if not self.widths or not self.freqs:
            raise ValueError("widths and freqs must be non-empty")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


def cell_seed(seed_base: int, width: float, freq: float, trial: int) -> int:
    """Stable per-cell seed so any cell can be re-run in isolation."""
    key = f"{width:g}|{freq:g}|{trial}".encode()
    return seed_base ^ zlib.crc32(key)


def initial_world(trajectory: Trajectory, standoff: float = 20.0) -> WorldState:
    """Object at node 0; robot a standoff behind it along the inward normal."""
    pts = trajectory.as_array()
    start = pts[0]
    center = pts.mean(axis=0)
    inward = center - start
    n = np.linalg.norm(inward)
    if n < 1e-9:
        inward = np.array([1.0, 0.0])
        n = 1.0
    robot = start + standoff * inward / n
    return WorldState(robot=(float(robot[0]), float(robot[1])),
                      object=(float(start[0]), float(start[1])))


def run_trial(
    width: float,
    freq: float,
    trial: int,
    trajectory: Trajectory,
    plant: PlantConfig,
    seed_base: int = 0,
    approach_distance: float = 15.0,
    arrival_threshold: float = 8.0,
    timeout_s: float = 600.0,
) -> TrialResult:
    """One closed-loop run of a grid cell; a timeout yields a flagged result."""
    cfg = ControllerConfig(
        corridor_width=width,
        push_freq_hz=freq,
        spin_freq_hz=freq,
        waypoints=trajectory.nodes,
        approach_distance=approach_distance,
        arrival_threshold=arrival_threshold,
    )
    seed = cell_seed(seed_base, width, freq, trial)
    world = initial_world(trajectory)
    snapshot = {
        "corridor_width_um": width,
        "freq_hz": freq,
        "trial": trial,
        "seed": seed,
        "noise_std": plant.noise_std,
        "slip_factor": plant.slip_factor,
        "vortex_gain": plant.vortex_gain,
    }
    try:
        log = run_closed_loop(cfg, plant, world, seed=seed, timeout_s=timeout_s)
    except TimeoutExceeded as exc:
        raw = Trajectory.of([f.object for f in exc.log.frames] or [world.object],
                            TrajectoryRole.ACTUAL_RAW)
        resampled = resample_closest(raw, trajectory)
        return TrialResult(
            mae_um=mean_abs_error(resampled, trajectory),
            completion_s=float("nan"),
            chatter=chatter_count(exc.log),
            raw=raw,
            resampled=resampled,
            desired=trajectory,
            config=snapshot,
            timed_out=True,
        )
    return evaluate_log(log, trajectory, config=snapshot)


@dataclass
class GridReport:
    """All trial results of one grid run plus derived aggregates."""

    widths: tuple[float, ...]
    freqs: tuple[float, ...]
    trials: int
    seed_base: int
    results: dict[tuple[float, float, int], TrialResult]

    def cell(self, width: float, freq: float) -> list[TrialResult]:
        return [self.results[(width, freq, k)] for k in range(self.trials)]

    def cell_stats(self, width: float, freq: float) -> dict:
        rs = self.cell(width, freq)
        maes = [r.mae_um for r in rs]
        times = [r.completion_s for r in rs if not r.timed_out]
        chats = [r.chatter for r in rs]
        return {
            "mae_mean": float(np.mean(maes)),
            "mae_std": float(np.std(maes)),
            "completion_mean": float(np.mean(times)) if times else float("nan"),
            "completion_std": float(np.std(times)) if times else float("nan"),
            "chatter_mean": float(np.mean(chats)),
            "timeouts": sum(r.timed_out for r in rs),
        }

    def width_mean_mae(self, width: float) -> float:
        return float(np.mean([r.mae_um for (w, _, _), r in sorted(self.results.items()) if w == width]))

    # -- trend assertions --------------------------------------------------

    def trend_checks(self) -> list[tuple[str, bool]]:
        """Machine-checkable pass/fail lines mirroring the published trends."""
        checks: list[tuple[str, bool]] = []
        freqs = sorted(self.freqs)
        widths = sorted(self.widths)
        for w in widths:
            means = [self.cell_stats(w, f)["completion_mean"] for f in freqs]
            ok = all(a > b for a, b in zip(means, means[1:])) and all(math.isfinite(m) for m in means)
            checks.append((f"completion_time strictly decreasing in frequency at width {w:g} um", ok))
        maes = [self.width_mean_mae(w) for w in widths]
        checks.append(("mean MAE strictly increasing in corridor width",
                       all(a < b for a, b in zip(maes, maes[1:]))))
        for f in freqs:
            chats = [self.cell_stats(w, f)["chatter_mean"] for w in widths]
            checks.append((f"chatter nondecreasing in corridor width at {f:g} Hz",
                           all(a <= b for a, b in zip(chats, chats[1:]))))
        return checks

    def all_trends_pass(self) -> bool:
        return all(ok for _, ok in self.trend_checks())

    # -- serialization -----------------------------------------------------

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for (w, f, k) in sorted(self.results):
            r = self.results[(w, f, k)]
            comp = "timeout" if r.timed_out else f"{r.completion_s:.6f}"
            lines.append(f"{w:g},{f:g},{k + 1},{r.mae_um:.6f},{comp},{r.chatter}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "widths": list(self.widths),
            "freqs": list(self.freqs),
            "trials": self.trials,
            "seed_base": self.seed_base,
            "cells": [
                {
                    "corridor_width_um": w,
                    "freq_hz": f,
                    **self.cell_stats(w, f),
                    "trials": [self.results[(w, f, k)].to_json_dict() for k in range(self.trials)],
                }
                for w in sorted(self.widths)
                for f in sorted(self.freqs)
            ],
            "trend_checks": [{"name": name, "passed": ok} for name, ok in self.trend_checks()],
        }

    def summary_table(self) -> str:
        """Aligned text table, one row per (width, freq): trials + averages."""
        header = (
            f"{'width_um':>9} {'freq_hz':>8} "
            + " ".join(f"{'mae_t' + str(k + 1):>8}" for k in range(self.trials))
            + f" {'mae_avg':>8} "
            + " ".join(f"{'time_t' + str(k + 1):>9}" for k in range(self.trials))
            + f" {'time_avg':>9} {'chatter':>8}"
        )
        lines = [header]
        for w in sorted(self.widths):
            for f in sorted(self.freqs):
                rs = self.cell(w, f)
                stats = self.cell_stats(w, f)
                maes = " ".join(f"{r.mae_um:8.3f}" for r in rs)
                times = " ".join(
                    f"{'timeout':>9}" if r.timed_out else f"{r.completion_s:9.3f}" for r in rs
                )
                lines.append(
                    f"{w:9g} {f:8g} {maes} {stats['mae_mean']:8.3f} "
                    f"{times} {stats['completion_mean']:9.3f} {stats['chatter_mean']:8.2f}"
                )
        for name, ok in self.trend_checks():
            lines.append(f"[{'PASS' if ok else 'FAIL'}] {name}")
        return "\n".join(lines) + "\n"


def run_grid(grid: ExperimentGrid, plant: Optional[PlantConfig] = None) -> GridReport:
    """Run every (width, freq, trial) cell; cell timeouts are recorded, not fatal."""
    if plant is None:
        plant = PlantConfig(noise_std=DEFAULT_NOISE_STD)
    results: dict[tuple[float, float, int], TrialResult] = {}
    for w in grid.widths:
        for f in grid.freqs:
            for k in range(grid.trials):
                results[(w, f, k)] = run_trial(
                    w, f, k, grid.trajectory, plant,
                    seed_base=grid.seed_base,
                    approach_distance=grid.approach_distance,
                    arrival_threshold=grid.arrival_threshold,
                    timeout_s=grid.timeout_s,
                )
    return GridReport(
        widths=grid.widths, freqs=grid.freqs, trials=grid.trials,
        seed_base=grid.seed_base, results=results,
    )


def write_report(report: GridReport, out_dir: str | Path) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "json": out / "report.json",
        "csv": out / "report.csv",
        "summary": out / "summary.txt",
    }
    paths["json"].write_text(json.dumps(report.to_json_dict(), indent=2) + "\n")
    paths["csv"].write_text(report.to_csv())
    paths["summary"].write_text(report.summary_table())
    return paths

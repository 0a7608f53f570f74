"""Live simulation session service.

Exposes the plant + controller behind a small HTTP/WebSocket API so an
operator console can draw trajectories, start the autonomous pusher, or
steer open-loop. Commands are queued and applied at frame boundaries;
frames fan out to any number of subscribers, and slow subscribers drop
frames rather than stalling the tick.
"""

from __future__ import annotations

import asyncio
import contextlib
import itertools
import logging
import math
import random
import uuid
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse

from micropush.controller import ControllerConfig, Mode, PushController
from micropush.field import ActuationState, normalize_angle
from micropush.geometry import Vec2
from micropush.metrics import Trajectory, TrajectoryRole, evaluate_log
from micropush.sim import Frame, PlantConfig, TrialLog, WorldState, advance, observe

logger = logging.getLogger(__name__)

MAX_SESSIONS = 64
SUBSCRIBER_QUEUE_SIZE = 16
IDLE_SLEEP_S = 0.02


@dataclass
class ManualCommand:
    heading: float = 0.0
    freq_hz: float = 0.0
    spin: str = "none"  # none | cw | ccw

    def to_actuation(self) -> ActuationState:
        # Same mapping the controller uses: +pi/2 heading offset for a
        # roll, gamma 180deg for CW spin, 0 for CCW.
        if self.spin == "cw":
            return ActuationState(alpha=self.heading, gamma=math.pi, freq_hz=self.freq_hz)
        if self.spin == "ccw":
            return ActuationState(alpha=self.heading, gamma=0.0, freq_hz=self.freq_hz)
        return ActuationState(
            alpha=normalize_angle(self.heading + 0.5 * math.pi),
            gamma=0.5 * math.pi,
            freq_hz=self.freq_hz,
        )


@dataclass
class Session:
    id: str
    world: WorldState
    plant: PlantConfig
    realtime: bool = True
    seed: int = 0
    mode: str = "idle"  # idle | auto | manual
    paused: bool = False
    frame_seq: int = 0
    path: Optional[Trajectory] = None
    controller: Optional[PushController] = None
    controller_settings: dict = field(default_factory=dict)
    manual: ManualCommand = field(default_factory=ManualCommand)
    path_pending: bool = False
    log: Optional[TrialLog] = None
    result: Optional[dict] = None
    last_command: Optional[ActuationState] = None
    push_start_time: Optional[float] = None
    min_dists: Optional[np.ndarray] = None
    commands: asyncio.Queue = field(default_factory=asyncio.Queue)
    subscribers: list[asyncio.Queue] = field(default_factory=list)
    task: Optional[asyncio.Task] = None
    rng: random.Random = field(default_factory=lambda: random.Random(0))

    def controller_config(self) -> ControllerConfig:
        assert self.path is not None
        s = self.controller_settings
        return ControllerConfig(
            corridor_width=float(s.get("corridor_width", 10.0)),
            push_freq_hz=float(s.get("push_freq_hz", 9.0)),
            spin_freq_hz=float(s["spin_freq_hz"]) if "spin_freq_hz" in s else None,
            waypoints=self.path.nodes,
            approach_distance=float(s.get("approach_distance", 15.0)),
            arrival_threshold=float(s.get("arrival_threshold", 8.0)),
        )


def _frame_message(s: Session) -> dict:
    corridor = None
    mode = s.mode
    if s.controller is not None and s.mode == "auto":
        mode = s.controller.state.mode.value
        c = s.controller.state.corridor
        if c is not None:
            corridor = [list(c.l1), list(c.l2), list(c.r1), list(c.r2)]
    cmd = s.last_command
    mae = None
    if s.min_dists is not None and len(s.min_dists):
        mae = float(np.mean(s.min_dists))
    return {
        "frame": {
            "seq": s.frame_seq,
            "t": s.world.time,
            "robot": list(s.world.robot),
            "object": list(s.world.object),
            "mode": mode,
            "paused": s.paused,
            "corridor": corridor,
            "command": None if cmd is None else {
                "alpha": cmd.alpha, "gamma": cmd.gamma, "freq_hz": cmd.freq_hz,
            },
            "mae_so_far": mae,
            "elapsed_s": s.world.time,
        }
    }


def _broadcast(s: Session, message: dict) -> None:
    for q in list(s.subscribers):
        try:
            q.put_nowait(message)
        except asyncio.QueueFull:
            pass  # slow subscriber drops this frame


def _apply_command(s: Session, msg: dict) -> None:
    op = msg.get("op")
    if op == "set_path":
        nodes = [(float(x), float(y)) for x, y in msg["nodes"]]
        s.path = Trajectory.of(nodes, TrajectoryRole.DESIRED)
        s.path_pending = False
        s.controller = None
        s.result = None
        s.mode = "idle"
    elif op == "start_auto":
        if s.path is None:
            logger.warning("start_auto with no path on session %s", s.id)
            return
        s.controller = PushController(s.controller_config(), observe(s.world, s.plant, s.rng))
        s.log = TrialLog()
        s.min_dists = np.full(len(s.path), np.inf)
        s.result = None
        s.mode = "auto"
        s.paused = False
    elif op == "manual":
        s.manual = ManualCommand(
            heading=float(msg.get("heading", 0.0)),
            freq_hz=float(msg.get("freq", 0.0)),
            spin=str(msg.get("spin", "none")),
        )
        if s.mode != "manual":
            s.min_dists = np.full(len(s.path), np.inf) if s.path else None
        s.mode = "manual"
        s.paused = False
    elif op == "pause":
        s.paused = True
    elif op == "config":
        plant_fields = {k: float(v) for k, v in msg.items()
                       if k in ("slip_factor", "stepout_hz", "vortex_gain", "noise_std", "dt")}
        if plant_fields:
            s.plant = replace(s.plant, **plant_fields)
        for k in ("corridor_width", "push_freq_hz", "spin_freq_hz",
                  "approach_distance", "arrival_threshold"):
            if k in msg:
                s.controller_settings[k] = float(msg[k])
        if "seed" in msg:
            s.seed = int(msg["seed"])
            s.rng = random.Random(s.seed)


def _update_min_dists(s: Session) -> None:
    if s.min_dists is None or s.path is None:
        return
    d = np.linalg.norm(s.path.as_array() - np.asarray(s.world.object), axis=1)
    np.minimum(s.min_dists, d, out=s.min_dists)


def _tick_once(s: Session) -> None:
    """Advance the session by one frame (commands already applied)."""
    s.frame_seq += 1
    if s.paused or s.mode == "idle":
        return
    if s.mode == "auto" and s.controller is not None:
        obs = observe(s.world, s.plant, s.rng)
        cmd = s.controller.step(obs)
        s.last_command = cmd
        if s.log is not None:
            s.log.frames.append(Frame(
                time=s.world.time, robot=s.world.robot, object=s.world.object,
                mode=s.controller.state.mode, command=cmd,
            ))
        if s.controller.is_done:
            s.log.done = True
            s.log.done_time = s.world.time
            s.log.mode_transitions = list(s.controller.state.mode_transition_log)
            result = evaluate_log(s.log, s.path, config=dict(s.controller_settings))
            s.result = result.to_json_dict()
            s.mode = "idle"
            return
        s.world = advance(s.world, cmd, s.plant)
        _update_min_dists(s)
    elif s.mode == "manual":
        cmd = s.manual.to_actuation()
        s.last_command = cmd
        if cmd.freq_hz > 0.0:
            s.world = advance(s.world, cmd, s.plant)
            _update_min_dists(s)
        else:
            s.world = replace(s.world, time=s.world.time + s.plant.dt)


async def _session_loop(s: Session) -> None:
    try:
        while True:
            while not s.commands.empty():
                _apply_command(s, s.commands.get_nowait())
            _tick_once(s)
            _broadcast(s, _frame_message(s))
            active = not s.paused and s.mode != "idle"
            if s.realtime:
                await asyncio.sleep(s.plant.dt)
            elif active:
                await asyncio.sleep(0)
            else:
                await asyncio.sleep(IDLE_SLEEP_S)
    except asyncio.CancelledError:
        raise
    except Exception:
        logger.exception("session %s tick loop crashed", s.id)


def create_app() -> FastAPI:
    app = FastAPI(title="micropush sim server")
    sessions: dict[str, Session] = {}
    app.state.sessions = sessions

    @app.post("/sessions")
    async def create_session(body: Optional[dict] = None):
        if len(sessions) >= MAX_SESSIONS:
            return JSONResponse({"error": {"code": "capacity", "message": "too many sessions"}},
                                status_code=503)
        body = body or {}
        try:
            plant = PlantConfig(**body.get("plant", {}))
            w = body.get("world", {})
            world = WorldState(
                robot=tuple(w.get("robot", (280.0, 300.0))),
                object=tuple(w.get("object", (300.0, 300.0))),
            )
        except (TypeError, ValueError) as exc:
            return JSONResponse({"error": {"code": "bad_config", "message": str(exc)}},
                                status_code=422)
        seed = int(body.get("seed", 0))
        s = Session(
            id=uuid.uuid4().hex,
            world=world,
            plant=plant,
            realtime=bool(body.get("realtime", True)),
            seed=seed,
            rng=random.Random(seed),
        )
        sessions[s.id] = s
        s.task = asyncio.create_task(_session_loop(s))
        return {"id": s.id}

    @app.delete("/sessions/{sid}")
    async def delete_session(sid: str):
        s = sessions.pop(sid, None)
        if s is None:
            return JSONResponse({"error": {"code": "unknown_session"}}, status_code=404)
        if s.task is not None:
            s.task.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await s.task
        return {"deleted": sid}

    @app.get("/sessions/{sid}/result")
    async def get_result(sid: str):
        s = sessions.get(sid)
        if s is None:
            return JSONResponse({"error": {"code": "unknown_session"}}, status_code=404)
        if s.result is None:
            return JSONResponse({"error": {"code": "not_finished"}}, status_code=409)
        return s.result

    @app.websocket("/sessions/{sid}/ws")
    async def session_ws(ws: WebSocket, sid: str):
        s = sessions.get(sid)
        if s is None:
            await ws.close(code=4004)
            return
        await ws.accept()
        frames: asyncio.Queue = asyncio.Queue(maxsize=SUBSCRIBER_QUEUE_SIZE)
        s.subscribers.append(frames)

        async def pump_frames():
            while True:
                await ws.send_json(await frames.get())

        pump = asyncio.create_task(pump_frames())
        try:
            while True:
                msg = await ws.receive_json()
                err = _validate(s, msg)
                if err is not None:
                    await ws.send_json({"error": err})
                    continue
                await s.commands.put(msg)
                if msg.get("op") == "set_path":
                    s.path_pending = True
                await ws.send_json({"ack": msg.get("op")})
        except WebSocketDisconnect:
            pass
        finally:
            pump.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await pump
            if frames in s.subscribers:
                s.subscribers.remove(frames)

    return app


def _validate(s: Session, msg: dict) -> Optional[dict]:
    op = msg.get("op")
    if op == "set_path":
        nodes = msg.get("nodes")
        if not isinstance(nodes, list) or len(nodes) < 2:
            return {"code": "degenerate_path", "message": "path needs at least 2 nodes"}
        return None
    if op == "start_auto":
        if s.path is None and not s.path_pending:
            return {"code": "no_path", "message": "set a path before starting auto mode"}
        return None
    if op == "manual":
        if msg.get("spin", "none") not in ("none", "cw", "ccw"):
            return {"code": "bad_spin", "message": "spin must be none|cw|ccw"}
        if float(msg.get("freq", 0.0)) < 0.0:
            return {"code": "bad_freq", "message": "freq must be >= 0"}
        return None
    if op in ("pause", "config"):
        return None
    return {"code": "unknown_op", "message": f"unknown op {op!r}"}

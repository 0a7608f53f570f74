// JSON message types of the sim server's websocket channel.

export type SpinDir = "none" | "cw" | "ccw";

export interface SetPathOp {
  op: "set_path";
  nodes: [number, number][];
}

export interface StartAutoOp {
  op: "start_auto";
}

export interface ManualOp {
  op: "manual";
  heading: number; // radians, screen convention
  freq: number; // Hz
  spin: SpinDir;
}

export interface PauseOp {
  op: "pause";
}

export interface ConfigOp {
  op: "config";
  [key: string]: number | string;
}

export type ClientOp = SetPathOp | StartAutoOp | ManualOp | PauseOp | ConfigOp;

export interface FrameMsg {
  seq: number;
  t: number;
  robot: [number, number];
  object: [number, number];
  mode: string;
  paused: boolean;
  corridor: [number, number][] | null; // [L1, L2, R1, R2] when pushing
  command: { alpha: number; gamma: number; freq_hz: number } | null;
  mae_so_far: number | null;
  elapsed_s: number;
}

export interface ServerMsg {
  frame?: FrameMsg;
  ack?: string;
  error?: { code: string; message?: string };
}

export function manualOp(heading: number, freq: number, spin: SpinDir): ManualOp {
  return { op: "manual", heading, freq, spin };
}

export function setPathOp(nodes: [number, number][]): SetPathOp {
  return { op: "set_path", nodes };
}

export interface SimSocket {
  send(op: ClientOp): boolean;
  close(): void;
}

export function connectSession(
  wsBase: string,
  sessionId: string,
  onMessage: (msg: ServerMsg) => void,
  onClose: () => void,
): SimSocket {
  const socket = new WebSocket(`${wsBase}/sessions/${sessionId}/ws`);
  socket.onmessage = (evt) => {
    try {
      onMessage(JSON.parse(String(evt.data)) as ServerMsg);
    } catch (err) {
      console.error("ws parse error", err);
    }
  };
  socket.onclose = () => onClose();
  return {
    send(op: ClientOp): boolean {
      if (socket.readyState !== WebSocket.OPEN) return false;
      socket.send(JSON.stringify(op));
      return true;
    },
    close(): void {
      socket.close();
    },
  };
}

// Rate limiter for manual drive commands (the camera runs at 24 fps;
// sending faster than that is pointless).
export class Throttle {
  private minIntervalMs: number;
  private lastSent = -Infinity;

  constructor(maxPerSecond: number) {
    this.minIntervalMs = 1000 / maxPerSecond;
  }

  ready(nowMs: number): boolean {
    if (nowMs - this.lastSent >= this.minIntervalMs) {
      this.lastSent = nowMs;
      return true;
    }
    return false;
  }
}

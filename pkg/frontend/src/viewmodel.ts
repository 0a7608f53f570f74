// Operator console state, updated atomically once per received frame.

import { FrameMsg } from "./protocol.js";
import { Trail } from "./trails.js";
import { Vec2, dist } from "./transform.js";

export type InputMode = "draw" | "drive" | "observe";

export class ViewModel {
  latest: FrameMsg | null = null;
  drawnPathUm: Vec2[] = [];
  inputMode: InputMode = "observe";
  robotTrail = new Trail();
  objectTrail = new Trail();
  chatterCount = 0;
  private prevMode: string | null = null;

  applyFrame(frame: FrameMsg): void {
    this.latest = frame;
    this.robotTrail.push({ x: frame.robot[0], y: frame.robot[1] });
    this.objectTrail.push({ x: frame.object[0], y: frame.object[1] });
    if (
      this.prevMode === "push" &&
      (frame.mode === "spin_cw" || frame.mode === "spin_ccw")
    ) {
      this.chatterCount += 1;
    }
    this.prevMode = frame.mode;
  }

  // e_G: distance from the object to the end of the drawn path.
  goalError(): number | null {
    if (this.latest === null || this.drawnPathUm.length === 0) return null;
    const goal = this.drawnPathUm[this.drawnPathUm.length - 1];
    return dist({ x: this.latest.object[0], y: this.latest.object[1] }, goal);
  }

  resetRun(): void {
    this.robotTrail.clear();
    this.objectTrail.clear();
    this.chatterCount = 0;
    this.prevMode = null;
  }

  resetSession(): void {
    this.resetRun();
    this.drawnPathUm = [];
    this.latest = null;
  }
}

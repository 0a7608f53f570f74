// Bounded position trails: unbounded canvases degrade, so when the cap
// is hit every other point is dropped and accumulation continues.

import { Vec2 } from "./transform.js";

export const TRAIL_CAP = 10_000;

export class Trail {
  points: Vec2[] = [];
  private cap: number;

  constructor(cap = TRAIL_CAP) {
    this.cap = cap;
  }

  push(p: Vec2): void {
    this.points.push({ x: p.x, y: p.y });
    if (this.points.length > this.cap) {
      this.points = this.points.filter((_, i) => i % 2 === 0);
    }
  }

  clear(): void {
    this.points = [];
  }
}

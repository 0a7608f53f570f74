import { describe, expect, it } from "vitest";
import { PathCapture, nodesToWire } from "../src/path.js";

describe("PathCapture", () => {
  it("decimates a straight 100 um drag to ~50 nodes at 2 um spacing", () => {
    const cap = new PathCapture();
    // simulated pointer samples every 0.5 um
    for (let x = 0; x <= 100; x += 0.5) {
      cap.add({ x, y: 0 });
    }
    const nodes = cap.finish({ x: 100, y: 0 });
    expect(nodes.length).toBeGreaterThanOrEqual(48);
    expect(nodes.length).toBeLessThanOrEqual(53);
    for (let i = 1; i < nodes.length - 1; i++) {
      expect(Math.hypot(nodes[i].x - nodes[i - 1].x, nodes[i].y - nodes[i - 1].y))
        .toBeGreaterThanOrEqual(2 - 1e-9);
    }
  });

  it("rejects a click without a drag", () => {
    const cap = new PathCapture();
    cap.add({ x: 10, y: 10 });
    cap.finish({ x: 10, y: 10 });
    expect(cap.isSendable).toBe(false);
  });

  it("keeps the stroke endpoint even when closer than the spacing", () => {
    const cap = new PathCapture();
    cap.add({ x: 0, y: 0 });
    cap.add({ x: 5, y: 0 });
    const nodes = cap.finish({ x: 5.7, y: 0 });
    expect(nodes[nodes.length - 1]).toEqual({ x: 5.7, y: 0 });
  });

  it("accepts a freeform loop", () => {
    const cap = new PathCapture();
    for (let i = 0; i <= 720; i++) {
      const a = (i * Math.PI) / 360;
      cap.add({ x: 60 * Math.cos(a), y: 60 * Math.sin(a) });
    }
    cap.finish({ x: 60, y: 0 });
    expect(cap.isSendable).toBe(true);
    expect(cap.result().length).toBeGreaterThan(100);
  });

  it("serializes nodes as [x, y] pairs", () => {
    expect(nodesToWire([{ x: 1.5, y: 2.5 }, { x: 3, y: 4 }])).toEqual([
      [1.5, 2.5],
      [3, 4],
    ]);
  });
});

import { describe, expect, it } from "vitest";
import { Throttle } from "../src/protocol.js";
import { Trail } from "../src/trails.js";
import { ViewModel } from "../src/viewmodel.js";
import type { FrameMsg } from "../src/protocol.js";

function frame(overrides: Partial<FrameMsg>): FrameMsg {
  return {
    seq: 0,
    t: 0,
    robot: [0, 0],
    object: [10, 0],
    mode: "push",
    paused: false,
    corridor: null,
    command: null,
    mae_so_far: null,
    elapsed_s: 0,
    ...overrides,
  };
}

describe("ViewModel", () => {
  it("counts push -> spin transitions as chatter", () => {
    const vm = new ViewModel();
    const modes = ["approach", "push", "spin_cw", "push", "spin_ccw", "spin_ccw", "push"];
    modes.forEach((mode, i) => vm.applyFrame(frame({ seq: i, mode })));
    expect(vm.chatterCount).toBe(2);
  });

  it("accumulates trails per frame", () => {
    const vm = new ViewModel();
    vm.applyFrame(frame({ robot: [0, 0], object: [10, 0] }));
    vm.applyFrame(frame({ robot: [1, 0], object: [11, 0] }));
    expect(vm.robotTrail.points.length).toBe(2);
    expect(vm.objectTrail.points.length).toBe(2);
  });

  it("goal error is the distance from object to the drawn path end", () => {
    const vm = new ViewModel();
    vm.drawnPathUm = [{ x: 0, y: 0 }, { x: 100, y: 0 }];
    vm.applyFrame(frame({ object: [97, 4] }));
    expect(vm.goalError()).toBeCloseTo(5, 9);
  });

  it("session reset clears the drawn path", () => {
    const vm = new ViewModel();
    vm.drawnPathUm = [{ x: 0, y: 0 }, { x: 1, y: 1 }];
    vm.applyFrame(frame({}));
    vm.resetSession();
    expect(vm.drawnPathUm).toEqual([]);
    expect(vm.latest).toBeNull();
    expect(vm.chatterCount).toBe(0);
  });
});

describe("Trail", () => {
  it("caps and decimates instead of growing unbounded", () => {
    const trail = new Trail(100);
    for (let i = 0; i < 1000; i++) trail.push({ x: i, y: 0 });
    expect(trail.points.length).toBeLessThanOrEqual(101);
    expect(trail.points[trail.points.length - 1].x).toBe(999);
  });
});

describe("Throttle", () => {
  it("limits to the configured rate", () => {
    const th = new Throttle(24);
    let sent = 0;
    for (let t = 0; t < 1000; t += 5) {
      if (th.ready(t)) sent++;
    }
    expect(sent).toBeGreaterThanOrEqual(23);
    expect(sent).toBeLessThanOrEqual(25);
  });
});

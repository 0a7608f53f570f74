// Keyboard / virtual joystick driving. The stick vector is in screen
// coordinates (right = +x, down = +y); the wire heading uses the
// actuation convention with y negated, so screen-down maps to -pi/2.

import { ManualOp, SpinDir, manualOp } from "./protocol.js";

export function headingFromStick(dxScreen: number, dyScreen: number): number {
  return Math.atan2(-dyScreen, dxScreen);
}

export interface DriveState {
  up: boolean;
  down: boolean;
  left: boolean;
  right: boolean;
  spin: SpinDir;
}

export function emptyDriveState(): DriveState {
  return { up: false, down: false, left: false, right: false, spin: "none" };
}

// Translate held keys into one manual command; released stick holds with
// frequency 0 so the robot stops rather than coasting.
export function driveCommand(state: DriveState, freqHz: number): ManualOp {
  if (state.spin !== "none") {
    return manualOp(0, freqHz, state.spin);
  }
  const dx = (state.right ? 1 : 0) - (state.left ? 1 : 0);
  const dy = (state.down ? 1 : 0) - (state.up ? 1 : 0);
  if (dx === 0 && dy === 0) {
    return manualOp(0, 0, "none");
  }
  return manualOp(headingFromStick(dx, dy), freqHz, "none");
}

const KEYMAP: Record<string, keyof Omit<DriveState, "spin">> = {
  ArrowUp: "up",
  ArrowDown: "down",
  ArrowLeft: "left",
  ArrowRight: "right",
  w: "up",
  s: "down",
  a: "left",
  d: "right",
};

export function applyKey(state: DriveState, key: string, pressed: boolean): boolean {
  const dir = KEYMAP[key];
  if (dir !== undefined) {
    state[dir] = pressed;
    return true;
  }
  if (key === "q") {
    state.spin = pressed ? "ccw" : "none";
    return true;
  }
  if (key === "e") {
    state.spin = pressed ? "cw" : "none";
    return true;
  }
  return false;
}

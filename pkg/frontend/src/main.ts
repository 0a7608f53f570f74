// Operator console wiring: session creation, websocket, canvas view,
// mouse path drawing, keyboard driving, HUD.

import { DriveState, applyKey, driveCommand, emptyDriveState } from "./drive.js";
import { PathCapture, nodesToWire } from "./path.js";
import { ServerMsg, SimSocket, Throttle, connectSession, setPathOp } from "./protocol.js";
import { ViewTransform } from "./transform.js";
import { ViewModel } from "./viewmodel.js";
import { render } from "./render.js";

const API_BASE = `${location.protocol}//${location.host}`;
const WS_BASE = API_BASE.replace(/^http/, "ws");

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
}

const canvas = byId<HTMLCanvasElement>("scene");
const ctx = canvas.getContext("2d")!;
const hudMode = byId<HTMLSpanElement>("hud-mode");
const hudError = byId<HTMLSpanElement>("hud-error");
const hudChatter = byId<HTMLSpanElement>("hud-chatter");
const hudElapsed = byId<HTMLSpanElement>("hud-elapsed");
const hudMae = byId<HTMLSpanElement>("hud-mae");
const toast = byId<HTMLDivElement>("toast");

const vm = new ViewModel();
const view = new ViewTransform(1.5, 40, 40);
const capture = new PathCapture();
const drive: DriveState = emptyDriveState();
const driveThrottle = new Throttle(24);

let socket: SimSocket | null = null;
let drawing = false;

function showToast(text: string): void {
  toast.textContent = text;
  toast.classList.add("visible");
  setTimeout(() => toast.classList.remove("visible"), 2500);
}

function numberInput(id: string): number {
  return parseFloat(byId<HTMLInputElement>(id).value);
}

function onServerMessage(msg: ServerMsg): void {
  if (msg.frame !== undefined) {
    vm.applyFrame(msg.frame);
  } else if (msg.error !== undefined) {
    showToast(`server error: ${msg.error.code}`);
  }
}

async function createSession(): Promise<void> {
  const resp = await fetch(`${API_BASE}/sessions`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ realtime: true }),
  });
  if (!resp.ok) {
    showToast(`session create failed (${resp.status})`);
    return;
  }
  const { id } = (await resp.json()) as { id: string };
  socket?.close();
  vm.resetSession();
  socket = connectSession(WS_BASE, id, onServerMessage, () => showToast("disconnected"));
  byId<HTMLSpanElement>("hud-session").textContent = id.slice(0, 8);
}

function sendConfig(): void {
  socket?.send({
    op: "config",
    corridor_width: numberInput("cfg-width"),
    push_freq_hz: numberInput("cfg-freq"),
    noise_std: numberInput("cfg-noise"),
  });
}

// -- path drawing ---------------------------------------------------------

canvas.addEventListener("pointerdown", (ev) => {
  if (vm.inputMode !== "draw") return;
  drawing = true;
  capture.clear();
  capture.add(view.pxToUm({ x: ev.offsetX, y: ev.offsetY }));
});

canvas.addEventListener("pointermove", (ev) => {
  if (!drawing) return;
  capture.add(view.pxToUm({ x: ev.offsetX, y: ev.offsetY }));
  vm.drawnPathUm = capture.result();
});

canvas.addEventListener("pointerup", (ev) => {
  if (!drawing) return;
  drawing = false;
  const nodes = capture.finish(view.pxToUm({ x: ev.offsetX, y: ev.offsetY }));
  if (!capture.isSendable) {
    showToast("path too short: drag to draw at least 2 nodes");
    capture.clear();
    vm.drawnPathUm = [];
    return;
  }
  vm.drawnPathUm = nodes;
  if (socket?.send(setPathOp(nodesToWire(nodes))) !== true) {
    showToast("not connected");
  }
});

// -- driving --------------------------------------------------------------

window.addEventListener("keydown", (ev) => {
  if (vm.inputMode === "drive" && applyKey(drive, ev.key, true)) ev.preventDefault();
});
window.addEventListener("keyup", (ev) => {
  if (vm.inputMode === "drive" && applyKey(drive, ev.key, false)) ev.preventDefault();
});

function pumpDrive(): void {
  if (vm.inputMode === "drive" && socket !== null && driveThrottle.ready(performance.now())) {
    socket.send(driveCommand(drive, numberInput("cfg-freq")));
  }
}

// -- controls -------------------------------------------------------------

for (const mode of ["draw", "drive", "observe"] as const) {
  byId<HTMLInputElement>(`mode-${mode}`).addEventListener("change", () => {
    vm.inputMode = mode;
  });
}

byId<HTMLButtonElement>("btn-session").addEventListener("click", () => void createSession());
byId<HTMLButtonElement>("btn-start").addEventListener("click", () => {
  sendConfig();
  vm.resetRun();
  if (socket?.send({ op: "start_auto" }) !== true) showToast("not connected");
});
byId<HTMLButtonElement>("btn-pause").addEventListener("click", () => {
  socket?.send({ op: "pause" });
});

// -- render loop ----------------------------------------------------------

function tick(): void {
  pumpDrive();
  render(ctx, canvas, vm, view);
  const f = vm.latest;
  if (f !== null) {
    hudMode.textContent = f.paused ? `${f.mode} (paused)` : f.mode;
    const eG = vm.goalError();
    hudError.textContent = eG === null ? "-" : `${eG.toFixed(1)} um`;
    hudChatter.textContent = String(vm.chatterCount);
    hudElapsed.textContent = `${f.elapsed_s.toFixed(1)} s`;
    hudMae.textContent = f.mae_so_far === null ? "-" : `${f.mae_so_far.toFixed(2)} um`;
  }
  requestAnimationFrame(tick);
}

void createSession();
requestAnimationFrame(tick);

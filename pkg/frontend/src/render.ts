// Canvas scene: desired path in red, object trail green, robot trail
// blue, corridor edges as the two lines L1-L2 and R1-R2.

import { ViewModel } from "./viewmodel.js";
import { Vec2, ViewTransform } from "./transform.js";

const COLORS = {
  background: "#10141a",
  grid: "#1d242e",
  desired: "#e04a4a",
  objectTrail: "#4ac26b",
  robotTrail: "#4a8fe0",
  corridor: "#d9c24a",
  robot: "#9cc4f5",
  object: "#9ef0b5",
};

const ROBOT_RADIUS_UM = 5;
const OBJECT_RADIUS_UM = 5;

function polyline(
  ctx: CanvasRenderingContext2D,
  view: ViewTransform,
  points: Vec2[],
  color: string,
  width = 1.5,
): void {
  if (points.length < 2) return;
  ctx.strokeStyle = color;
  ctx.lineWidth = width;
  ctx.beginPath();
  const p0 = view.umToPx(points[0]);
  ctx.moveTo(p0.x, p0.y);
  for (let i = 1; i < points.length; i++) {
    const p = view.umToPx(points[i]);
    ctx.lineTo(p.x, p.y);
  }
  ctx.stroke();
}

function disc(
  ctx: CanvasRenderingContext2D,
  view: ViewTransform,
  centerUm: Vec2,
  radiusUm: number,
  color: string,
): void {
  const c = view.umToPx(centerUm);
  ctx.fillStyle = color;
  ctx.beginPath();
  ctx.arc(c.x, c.y, radiusUm * view.pxPerUm, 0, 2 * Math.PI);
  ctx.fill();
}

export function render(
  ctx: CanvasRenderingContext2D,
  canvas: HTMLCanvasElement,
  vm: ViewModel,
  view: ViewTransform,
): void {
  ctx.fillStyle = COLORS.background;
  ctx.fillRect(0, 0, canvas.width, canvas.height);

  const spacingPx = 50 * view.pxPerUm;
  ctx.strokeStyle = COLORS.grid;
  ctx.lineWidth = 1;
  for (let x = view.panX % spacingPx; x < canvas.width; x += spacingPx) {
    ctx.beginPath();
    ctx.moveTo(x, 0);
    ctx.lineTo(x, canvas.height);
    ctx.stroke();
  }
  for (let y = view.panY % spacingPx; y < canvas.height; y += spacingPx) {
    ctx.beginPath();
    ctx.moveTo(0, y);
    ctx.lineTo(canvas.width, y);
    ctx.stroke();
  }

  polyline(ctx, view, vm.drawnPathUm, COLORS.desired, 2);
  polyline(ctx, view, vm.objectTrail.points, COLORS.objectTrail);
  polyline(ctx, view, vm.robotTrail.points, COLORS.robotTrail);

  const frame = vm.latest;
  if (frame === null) return;

  if (frame.corridor !== null) {
    const [l1, l2, r1, r2] = frame.corridor.map((p) => ({ x: p[0], y: p[1] }));
    polyline(ctx, view, [l1, l2], COLORS.corridor, 1);
    polyline(ctx, view, [r1, r2], COLORS.corridor, 1);
  }

  disc(ctx, view, { x: frame.robot[0], y: frame.robot[1] }, ROBOT_RADIUS_UM, COLORS.robot);
  disc(ctx, view, { x: frame.object[0], y: frame.object[1] }, OBJECT_RADIUS_UM, COLORS.object);
}

// Mouse-drawn path capture: pointer samples in um, decimated so that
// consecutive nodes are at least minSpacingUm apart.

import { Vec2, dist } from "./transform.js";

export const MIN_NODE_SPACING_UM = 2.0;

export class PathCapture {
  private nodes: Vec2[] = [];
  private minSpacing: number;

  constructor(minSpacingUm = MIN_NODE_SPACING_UM) {
    this.minSpacing = minSpacingUm;
  }

  add(pUm: Vec2): void {
    const last = this.nodes[this.nodes.length - 1];
    if (last === undefined || dist(last, pUm) >= this.minSpacing) {
      this.nodes.push({ x: pUm.x, y: pUm.y });
    }
  }

  // Close the stroke: keep the final pointer position even if it is
  // closer than the spacing, so the drawn endpoint is preserved.
  finish(pUm: Vec2): Vec2[] {
    const last = this.nodes[this.nodes.length - 1];
    if (last === undefined || dist(last, pUm) > 1e-9) {
      this.nodes.push({ x: pUm.x, y: pUm.y });
    }
    return this.result();
  }

  result(): Vec2[] {
    return this.nodes.slice();
  }

  get isSendable(): boolean {
    return this.nodes.length >= 2;
  }

  clear(): void {
    this.nodes = [];
  }
}

export function nodesToWire(nodes: Vec2[]): [number, number][] {
  return nodes.map((n) => [n.x, n.y]);
}

// View transform between workspace micrometres and canvas pixels.
// Both frames are y-down, so the mapping is a uniform scale plus a pan.

export interface Vec2 {
  x: number;
  y: number;
}

export class ViewTransform {
  pxPerUm: number;
  panX: number; // px offset of the um-origin
  panY: number;

  constructor(pxPerUm = 1.0, panX = 0, panY = 0) {
    if (!(pxPerUm > 0) || !isFinite(pxPerUm)) {
      throw new Error(`pxPerUm must be positive, got ${pxPerUm}`);
    }
    this.pxPerUm = pxPerUm;
    this.panX = panX;
    this.panY = panY;
  }

  umToPx(p: Vec2): Vec2 {
    return { x: p.x * this.pxPerUm + this.panX, y: p.y * this.pxPerUm + this.panY };
  }

  pxToUm(p: Vec2): Vec2 {
    return { x: (p.x - this.panX) / this.pxPerUm, y: (p.y - this.panY) / this.pxPerUm };
  }

  zoomAt(factor: number, anchorPx: Vec2): void {
    const before = this.pxToUm(anchorPx);
    this.pxPerUm *= factor;
    const after = this.umToPx(before);
    this.panX += anchorPx.x - after.x;
    this.panY += anchorPx.y - after.y;
  }

  panBy(dxPx: number, dyPx: number): void {
    this.panX += dxPx;
    this.panY += dyPx;
  }
}

export function dist(a: Vec2, b: Vec2): number {
  return Math.hypot(b.x - a.x, b.y - a.y);
}

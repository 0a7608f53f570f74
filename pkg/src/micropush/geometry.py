"""Planar geometry for corridor-based pushing.

All coordinates are micrometres in the image convention: origin at the
top-left, y increasing downward. Heading angles bridge to the actuation
frame via a negated y (screen-up is actuation +y).

Corner assignment: the L edge sits on the -u_perp side of the robot-goal
line and the R edge on the +u_perp side, where u_perp = (-(dy), dx)/|..|.
With that assignment the trigger tests A_L < 0 (object left of corridor)
and A_R > 0 (object right of corridor) are mutually exclusive and interior
points trigger neither.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from micropush.field import normalize_angle

Vec2 = tuple[float, float]


class DegenerateGeometry(ValueError):
    """Coincident points where a direction is required."""


class InvalidWidth(ValueError):
    """Nonpositive corridor width."""


class SideClass(enum.Enum):
    INSIDE = "inside"
    OUTSIDE_LEFT = "outside_left"
    OUTSIDE_RIGHT = "outside_right"


@dataclass(frozen=True)
class CorridorGeom:
    """Guiding corridor: edge corner points, width, and the anchoring segment."""

    l1: Vec2
    l2: Vec2
    r1: Vec2
    r2: Vec2
    width: float
    start: Vec2
    goal: Vec2


def distance(a: Vec2, b: Vec2) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])


def heading_to(frm: Vec2, to: Vec2) -> float:
    """Actuation-frame heading angle from `frm` to `to`, in [0, 2*pi).

    The y difference is negated to compensate for the y-down image frame.
    """
    dx = to[0] - frm[0]
    dy = to[1] - frm[1]
    if dx == 0.0 and dy == 0.0:
        raise DegenerateGeometry(f"coincident points {frm}")
    return normalize_angle(math.atan2(-dy, dx))


def approach_point(obj: Vec2, goal: Vec2, d: float) -> Vec2:
    """Point a distance d behind the object on the object-goal line."""
    dx = goal[0] - obj[0]
    dy = goal[1] - obj[1]
    n = math.hypot(dx, dy)
    if n == 0.0:
        raise DegenerateGeometry(f"object coincides with goal at {obj}")
    return (obj[0] - d * dx / n, obj[1] - d * dy / n)


def build_corridor(m: Vec2, g: Vec2, w: float) -> CorridorGeom:
    """Corridor of width w from the robot position m to the goal g."""
    if w <= 0.0:
        raise InvalidWidth(f"corridor width must be positive, got {w}")
    dx = g[0] - m[0]
    dy = g[1] - m[1]
    n = math.hypot(dx, dy)
    if n == 0.0:
        raise DegenerateGeometry(f"robot coincides with goal at {m}")
    px = -dy / n
    py = dx / n
    h = 0.5 * w
    return CorridorGeom(
        l1=(m[0] - h * px, m[1] - h * py),
        l2=(g[0] - h * px, g[1] - h * py),
        r1=(m[0] + h * px, m[1] + h * py),
        r2=(g[0] + h * px, g[1] + h * py),
        width=w,
        start=m,
        goal=g,
    )


def _signed_area(p1: Vec2, p2: Vec2, p3: Vec2) -> float:
    # half the 3x3 determinant | x1 y1 1 ; x2 y2 1 ; x3 y3 1 |
    return 0.5 * (
        p1[0] * (p2[1] - p3[1])
        - p1[1] * (p2[0] - p3[0])
        + (p2[0] * p3[1] - p2[1] * p3[0])
    )


def signed_area_left(c: CorridorGeom, o: Vec2) -> float:
    """Signed triangle area over (L1, L2, O); negative when O is left of the corridor."""
    return _signed_area(c.l1, c.l2, o)


def signed_area_right(c: CorridorGeom, o: Vec2) -> float:
    """Signed triangle area over (R1, R2, O); positive when O is right of the corridor."""
    return _signed_area(c.r1, c.r2, o)


def classify_object(c: CorridorGeom, o: Vec2) -> SideClass:
    """Side classification of the object relative to the corridor slab.

    Points exactly on an edge line count as inside, avoiding spin chatter
    on the boundary.
    """
    if signed_area_left(c, o) < 0.0:
        return SideClass.OUTSIDE_LEFT
    if signed_area_right(c, o) > 0.0:
        return SideClass.OUTSIDE_RIGHT
    return SideClass.INSIDE

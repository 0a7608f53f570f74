"""Rotating magnetic field synthesis.

The actuation command is the triple (alpha, gamma, f): azimuthal heading
angle, elevation (attitude) angle, and rotation frequency. The field is a
unit vector rotating about the axis

    u = (sin(gamma) cos(alpha), sin(gamma) sin(alpha), cos(gamma))

with phase argument -2*pi*f*t (the negative sign keeps right-handed
chirality: positive angular frequency corresponds to clockwise rotation).
Physical scaling to coil duty cycles happens only in scale_to_coils.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi


def normalize_angle(a: float) -> float:
    """Wrap an angle into [0, 2*pi)."""
    a = math.fmod(a, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    return a if a < TWO_PI else 0.0


@dataclass(frozen=True)
class ActuationState:
    """Field command: heading alpha [0, 2pi), attitude gamma [0, pi], frequency in Hz."""

    alpha: float
    gamma: float
    freq_hz: float

    def __post_init__(self):
        if not math.isfinite(self.alpha) or not math.isfinite(self.gamma):
            raise ValueError("angles must be finite")
        if not math.isfinite(self.freq_hz) or self.freq_hz < 0.0:
            raise ValueError(f"freq_hz must be finite and >= 0, got {self.freq_hz}")
        if not -1e-12 <= self.gamma <= math.pi + 1e-12:
            raise ValueError(f"gamma must lie in [0, pi], got {self.gamma}")
        object.__setattr__(self, "alpha", normalize_angle(self.alpha))
        object.__setattr__(self, "gamma", min(max(self.gamma, 0.0), math.pi))


@dataclass(frozen=True)
class FieldSample:
    """Unit-amplitude field vector at time t (scale to mT downstream)."""

    b: tuple[float, float, float]
    t: float


@dataclass(frozen=True)
class CoilDuty:
    """Signed per-axis duty fractions; sign is polarity, magnitude is duty cycle."""

    duty_x: float
    duty_y: float
    duty_z: float

    def __post_init__(self):
        for d in (self.duty_x, self.duty_y, self.duty_z):
            if not -1.0 <= d <= 1.0:
                raise ValueError(f"duty component out of [-1, 1]: {d}")


def field_vector(cmd: ActuationState, t: float) -> FieldSample:
    """Evaluate the rotating field at time t.

    Pure and deterministic; the returned vector always has unit norm.
    """
    phase = -TWO_PI * cmd.freq_hz * t
    cp, sp = math.cos(phase), math.sin(phase)
    ca, sa = math.cos(cmd.alpha), math.sin(cmd.alpha)
    cg, sg = math.cos(cmd.gamma), math.sin(cmd.gamma)
    bx = -cg * ca * cp - sa * sp
    by = -cg * sa * cp + ca * sp
    bz = sg * cp
    return FieldSample(b=(bx, by, bz), t=t)


def rotation_axis(cmd: ActuationState) -> tuple[float, float, float]:
    """Unit rotation axis of the field; orthogonal to field_vector(cmd, t) for all t."""
    ca, sa = math.cos(cmd.alpha), math.sin(cmd.alpha)
    cg, sg = math.cos(cmd.gamma), math.sin(cmd.gamma)
    return (sg * ca, sg * sa, cg)


def scale_to_coils(
    s: FieldSample,
    caps_mT: tuple[float, float, float],
    target_mT: float = 5.0,
) -> CoilDuty:
    """Map a unit field sample to per-axis duty cycles.

    Each coil axis saturates at caps_mT[i] at 100% duty; the requested
    uniform field magnitude is target_mT. Components clamp to +/-1.
    """
    if any(c <= 0.0 for c in caps_mT):
        raise ValueError(f"coil caps must be positive, got {caps_mT}")
    norm = math.sqrt(sum(c * c for c in s.b))
    if norm < 1e-12:
        raise ValueError("zero field sample cannot be scaled")
    duties = [min(1.0, max(-1.0, c * target_mT / cap)) for c, cap in zip(s.b, caps_mT)]
    return CoilDuty(*duties)


# --- hardware-emulation line protocol ------------------------------------
#
# Newline-delimited ASCII, one record per line, 6 decimal places:
#   F <alpha_rad> <gamma_rad> <freq_hz>
#   D <dx> <dy> <dz>


def encode_command(cmd: ActuationState) -> str:
    return f"F {cmd.alpha:.6f} {cmd.gamma:.6f} {cmd.freq_hz:.6f}\n"


def encode_duty(d: CoilDuty) -> str:
    return f"D {d.duty_x:.6f} {d.duty_y:.6f} {d.duty_z:.6f}\n"


def parse_command(line: str) -> ActuationState:
    """Parse an `F` record back into an ActuationState."""
    parts = line.split()
    if len(parts) != 4 or parts[0] != "F":
        raise ValueError(f"malformed field command record: {line!r}")
    try:
        alpha, gamma, freq = (float(p) for p in parts[1:])
    except ValueError as exc:
        raise ValueError(f"malformed field command record: {line!r}") from exc
    return ActuationState(alpha=alpha, gamma=gamma, freq_hz=freq)

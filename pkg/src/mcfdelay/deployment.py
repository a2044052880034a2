"""Spatial layout of a deployed fiber: bend and twist segments.

A deployment profile is an ordered list of segments.  Each segment is either
straight or bent at a constant radius, carries a constant twist rate, and may
orient its curvature plane at its own azimuth.  Twist rotates the whole cross
section, so twist accumulated in earlier segments carries into every later
one, straight segments included.

Core angles are always expressed relative to the local curvature plane: for
core m inside a segment starting at z0,

    theta_m(z) = theta0_m - bend_plane_offset + twist_before + twist_rate * (z - z0)

where twist_before is the twist accumulated over all previous segments.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fiber import CoreSpec


@dataclass(frozen=True)
class Segment:
    """One span of the deployed fiber with uniform curvature and twist rate."""

    length: float  # m
    bend_radius: float | None = None  # m, None for a straight span
    twist_rate: float = 0.0  # rad/m
    bend_plane_offset: float = 0.0  # azimuth of the curvature plane, rad

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError(f"segment length must be > 0, got {self.length}")
        if self.bend_radius is not None and self.bend_radius <= 0:
            raise ValueError(f"bend radius must be > 0, got {self.bend_radius}")

    @property
    def is_bent(self) -> bool:
        return self.bend_radius is not None


@dataclass(frozen=True)
class DeploymentProfile:
    """Ordered segments covering the full fiber length."""

    segments: tuple[Segment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.segments:
            raise ValueError("deployment profile must contain at least one segment")

    @property
    def total_length(self) -> float:
        return sum(segment.length for segment in self.segments)


def segment_table(profile: DeploymentProfile) -> list[tuple[float, float, Segment]]:
    """Walk the profile and return (start position, twist before segment, segment).

    The accumulated twist entries let per-segment computations pick up the
    cross-section rotation inherited from everything upstream.
    """
    table = []
    z0 = 0.0
    twist = 0.0
    for segment in profile.segments:
        table.append((z0, twist, segment))
        z0 += segment.length
        twist += segment.twist_rate * segment.length
    return table


def angle_at(core: CoreSpec, profile: DeploymentProfile, z: float) -> float:
    """Azimuth of a core relative to the local curvature plane at position z.

    Positions on an interior segment boundary belong to the next segment;
    z equal to the total length evaluates the end of the last segment.
    Raises ValueError when z lies outside [0, total_length].
    """
    total = profile.total_length
    if z < 0 or z > total:
        raise ValueError(f"position {z} m outside the deployed span [0, {total}] m")
    table = segment_table(profile)
    for z0, twist_before, segment in reversed(table):
        if z >= z0:
            return (
                core.theta0
                - segment.bend_plane_offset
                + twist_before
                + segment.twist_rate * (z - z0)
            )
    # Unreachable: the first segment starts at 0 and z >= 0 was checked.
    raise AssertionError("segment lookup fell through")


def total_twist(profile: DeploymentProfile) -> float:
    """Net cross-section rotation over the whole profile, rad (sign preserved)."""
    return sum(segment.twist_rate * segment.length for segment in profile.segments)

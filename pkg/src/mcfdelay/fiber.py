"""Fiber cross-section geometry and per-core optical constants.

Everything is SI: meters, seconds, radians.  A core is described by its
radial offset from the fiber axis, its azimuth in the input cross section
and its phase / group refractive indices.  The hexagonal seven-core layout
used throughout (one central core, six outer cores on a ring) is provided
as a convenience constructor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import SPEED_OF_LIGHT
from .errors import GeometryError


@dataclass(frozen=True)
class CoreSpec:
    """One fiber core: position in the cross section plus optical constants."""

    id: int
    r: float  # radial offset from the fiber axis, m (0 for a central core)
    theta0: float  # azimuth at the fiber input, rad
    n: float  # phase refractive index
    ng: float  # group refractive index

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"core {self.id}: radial offset must be >= 0, got {self.r}")
        if self.n < 1.0:
            raise ValueError(f"core {self.id}: phase index must be >= 1, got {self.n}")
        if self.ng < 1.0:
            raise ValueError(f"core {self.id}: group index must be >= 1, got {self.ng}")


@dataclass(frozen=True)
class FiberSpec:
    """A multicore fiber: overall geometry plus an ordered tuple of cores."""

    length: float  # m
    cladding_diameter: float  # m
    cores: tuple[CoreSpec, ...]

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError(f"fiber length must be > 0, got {self.length}")
        if self.cladding_diameter <= 0:
            raise ValueError(f"cladding diameter must be > 0, got {self.cladding_diameter}")
        if not self.cores:
            raise ValueError("fiber must contain at least one core")
        ids = [core.id for core in self.cores]
        if len(set(ids)) != len(ids):
            raise ValueError(f"core ids must be unique, got {ids}")
        cladding_radius = self.cladding_diameter / 2.0
        for core in self.cores:
            if core.r > cladding_radius:
                raise GeometryError(
                    f"core {core.id} at offset {core.r} m falls outside the "
                    f"cladding radius {cladding_radius} m"
                )

    @property
    def max_core_offset(self) -> float:
        """Largest radial core offset, m."""
        return max(core.r for core in self.cores)

    def core_by_id(self, core_id: int) -> CoreSpec:
        for core in self.cores:
            if core.id == core_id:
                return core
        raise KeyError(f"no core with id {core_id}")


def seven_core_layout(
    pitch: float,
    n: float,
    ng: float,
    length: float,
    cladding_diameter: float,
) -> FiberSpec:
    """Build the standard hexagonal seven-core fiber.

    Core 0 sits on the fiber axis; cores 1..6 sit on a ring of radius
    ``pitch`` at azimuths k*pi/3 (k = 0..5).  All cores share the same
    indices, which is the homogeneous-fiber assumption the delay model
    relies on.

    Parameters
    ----------
    pitch : float
        Center-to-outer-core distance, m.
    n, ng : float
        Phase and group refractive indices shared by all cores.
    length : float
        Fiber length, m.
    cladding_diameter : float
        Outer cladding diameter, m.
    """
    if pitch <= 0:
        raise ValueError(f"pitch must be > 0, got {pitch}")
    if length <= 0:
        raise ValueError(f"length must be > 0, got {length}")
    if cladding_diameter <= 0:
        raise ValueError(f"cladding diameter must be > 0, got {cladding_diameter}")
    if pitch > cladding_diameter / 2.0:
        raise GeometryError(
            f"pitch {pitch} m exceeds the cladding radius {cladding_diameter / 2.0} m"
        )
    cores = [CoreSpec(id=0, r=0.0, theta0=0.0, n=n, ng=ng)]
    for k in range(6):
        cores.append(CoreSpec(id=k + 1, r=pitch, theta0=k * math.pi / 3.0, n=n, ng=ng))
    return FiberSpec(length=length, cladding_diameter=cladding_diameter, cores=tuple(cores))


def straight_delay(core: CoreSpec, length: float) -> float:
    """Group delay of a core over a straight, unperturbed span: ng * L / c."""
    if length <= 0:
        raise ValueError(f"length must be > 0, got {length}")
    return core.ng * length / SPEED_OF_LIGHT

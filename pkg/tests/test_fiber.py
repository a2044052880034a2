"""Fiber geometry and straight-span delay tests."""

import math
from fractions import Fraction

import numpy as np
import pytest

from mcfdelay import (
    CoreSpec,
    FiberSpec,
    GeometryError,
    SPEED_OF_LIGHT,
    seven_core_layout,
    straight_delay,
)

PITCH = 35e-6
CLAD = 125e-6
LENGTH = 3.0
N = 1.45
NG = 1.468


def test_seven_core_layout_geometry():
    fiber = seven_core_layout(PITCH, N, NG, LENGTH, CLAD)
    assert len(fiber.cores) == 7
    center = fiber.core_by_id(0)
    assert center.r == 0.0
    assert center.theta0 == 0.0
    for k in range(6):
        core = fiber.core_by_id(k + 1)
        assert core.r == PITCH
        assert core.theta0 == pytest.approx(k * math.pi / 3.0, rel=1e-15)
        assert core.n == N and core.ng == NG
    assert fiber.length == LENGTH
    assert fiber.cladding_diameter == CLAD
    assert fiber.max_core_offset == PITCH


def test_outer_cores_form_opposed_pairs():
    fiber = seven_core_layout(PITCH, N, NG, LENGTH, CLAD)
    for k in range(1, 4):
        a = fiber.core_by_id(k)
        b = fiber.core_by_id(k + 3)
        assert b.theta0 - a.theta0 == pytest.approx(math.pi, rel=1e-12)


def test_layout_rejects_pitch_beyond_cladding():
    with pytest.raises(GeometryError):
        seven_core_layout(70e-6, N, NG, LENGTH, CLAD)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(pitch=0.0),
        dict(pitch=-1e-6),
        dict(length=0.0),
        dict(length=-1.0),
        dict(cladding_diameter=0.0),
    ],
)
def test_layout_rejects_bad_scalars(kwargs):
    args = dict(pitch=PITCH, n=N, ng=NG, length=LENGTH, cladding_diameter=CLAD)
    args.update(kwargs)
    with pytest.raises(ValueError):
        seven_core_layout(**args)


def test_fiberspec_rejects_duplicate_ids():
    cores = (
        CoreSpec(id=1, r=0.0, theta0=0.0, n=N, ng=NG),
        CoreSpec(id=1, r=PITCH, theta0=0.0, n=N, ng=NG),
    )
    with pytest.raises(ValueError, match="unique"):
        FiberSpec(length=LENGTH, cladding_diameter=CLAD, cores=cores)


def test_fiberspec_rejects_core_outside_cladding():
    cores = (CoreSpec(id=0, r=80e-6, theta0=0.0, n=N, ng=NG),)
    with pytest.raises(GeometryError):
        FiberSpec(length=LENGTH, cladding_diameter=CLAD, cores=cores)


def test_corespec_rejects_unphysical_values():
    with pytest.raises(ValueError):
        CoreSpec(id=0, r=-1e-6, theta0=0.0, n=N, ng=NG)
    with pytest.raises(ValueError):
        CoreSpec(id=0, r=0.0, theta0=0.0, n=0.9, ng=NG)
    with pytest.raises(ValueError):
        CoreSpec(id=0, r=0.0, theta0=0.0, n=N, ng=0.5)


def test_straight_delay_baseline_span():
    # ng * L / c for the 1.468 / 3 m case, checked against exact rational
    # arithmetic and the frozen expected value.
    core = CoreSpec(id=0, r=0.0, theta0=0.0, n=N, ng=NG)
    delay = straight_delay(core, LENGTH)
    oracle = Fraction(1468, 1000) * 3 / Fraction(299792458)
    assert delay == pytest.approx(float(oracle), rel=1e-15)
    assert delay == pytest.approx(1.4690162752526616e-08, rel=1e-12)


def test_straight_delay_vacuum_identity():
    # a unit group index over one light-second is exactly one second
    core = CoreSpec(id=0, r=0.0, theta0=0.0, n=1.0, ng=1.0)
    assert straight_delay(core, SPEED_OF_LIGHT) == 1.0


def test_straight_delay_rejects_nonpositive_length():
    core = CoreSpec(id=0, r=0.0, theta0=0.0, n=N, ng=NG)
    with pytest.raises(ValueError):
        straight_delay(core, 0.0)
    with pytest.raises(ValueError):
        straight_delay(core, -2.0)


def test_straight_delay_is_linear_in_length():
    core = CoreSpec(id=0, r=0.0, theta0=0.0, n=N, ng=NG)
    rng = np.random.default_rng(20250819)
    for _ in range(200):
        a, b = rng.uniform(0.1, 50.0, 2)
        combined = straight_delay(core, a + b)
        split = straight_delay(core, a) + straight_delay(core, b)
        assert combined == pytest.approx(split, rel=1e-15)


def test_core_by_id_unknown_core():
    fiber = seven_core_layout(PITCH, N, NG, LENGTH, CLAD)
    with pytest.raises(KeyError):
        fiber.core_by_id(9)

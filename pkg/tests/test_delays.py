"""Delay engine: closed forms, quadrature oracle, DGD matrix, worst-case laws."""

import math

import numpy as np
import pytest

from mcfdelay import (
    CoreSpec,
    DeploymentProfile,
    ModelValidityError,
    PerturbationMode,
    SPEED_OF_LIGHT,
    Segment,
    accumulated_delay,
    delay_deviation,
    dgd_matrix,
    equivalent_index,
    integrate_delay_numeric,
    max_over_start_angle_dgd,
    seven_core_layout,
    sinc_u,
    straight_delay,
    worst_case_dgd,
)

NG = 1.468
N = 1.45
PITCH = 35e-6
LENGTH = 3.0
R35 = 0.035
R75 = 0.075

FIBER = seven_core_layout(PITCH, N, NG, LENGTH, 125e-6)
BEND35 = DeploymentProfile((Segment(LENGTH, bend_radius=R35),))
STRAIGHT = DeploymentProfile((Segment(LENGTH),))

# (ng/c) * r * L / R_b for the 35 mm / 75 mm cases, frozen from exact
# evaluation of the prefactor.
BASE35 = 1.4690162752526615e-11
BASE75 = 6.855409284512421e-12


def outer_core(theta0=0.0):
    return CoreSpec(id=1, r=PITCH, theta0=theta0, n=N, ng=NG)


# ---------------------------------------------------------------- sinc


def test_sinc_u_basics():
    assert sinc_u(0.0) == 1.0
    assert sinc_u(math.pi) == pytest.approx(0.0, abs=1e-16)
    # independent evaluation at 3*pi/4 via sqrt(2)/2
    expected = (math.sqrt(2.0) / 2.0) / (0.75 * math.pi)
    assert sinc_u(0.75 * math.pi) == pytest.approx(expected, rel=1e-14)
    assert sinc_u(0.75 * math.pi) == pytest.approx(0.30011, abs=1e-5)


def test_sinc_u_taylor_branch_is_seamless():
    # the series and the direct ratio must agree through the switchover
    for x in (9.9e-5, 1.01e-4, -9.9e-5, -1.01e-4):
        assert sinc_u(x) == pytest.approx(math.sin(x) / x, rel=1e-15)
    assert sinc_u(1e-9) == pytest.approx(1.0, abs=1e-18)
    assert sinc_u(-3.0) == sinc_u(3.0)


# ---------------------------------------------------- equivalent index


def test_equivalent_index_first_order_center_core():
    assert equivalent_index(N, 0.0, R35, 1.2, PerturbationMode.FIRST_ORDER) == N


def test_equivalent_index_first_order_neutral_azimuth():
    # at theta = pi/2 the perturbation term is below one float ulp of n
    value = equivalent_index(N, PITCH, R35, math.pi / 2, PerturbationMode.FIRST_ORDER)
    assert value == N


def test_equivalent_index_exact_sqrt_extremes():
    top = equivalent_index(N, PITCH, R35, 0.0, PerturbationMode.EXACT_SQRT)
    bottom = equivalent_index(N, PITCH, R35, math.pi, PerturbationMode.EXACT_SQRT)
    assert top == pytest.approx(N * math.sqrt(1.0 + 2e-3), rel=1e-12)
    assert top == pytest.approx(1.45144928, abs=5e-9)
    assert bottom == pytest.approx(1.44854927, abs=5e-9)


def test_equivalent_index_mode_difference_is_second_order():
    u = (PITCH / R35) * math.cos(0.4)
    first = equivalent_index(N, PITCH, R35, 0.4, PerturbationMode.FIRST_ORDER)
    exact = equivalent_index(N, PITCH, R35, 0.4, PerturbationMode.EXACT_SQRT)
    assert abs(first - exact) <= 0.6 * N * u * u


def test_equivalent_index_domain_errors():
    with pytest.raises(ValueError):
        equivalent_index(N, PITCH, 0.0, 0.0)
    with pytest.raises(ValueError):
        equivalent_index(N, -1e-6, R35, 0.0)
    # r/R = 4/7 at theta = pi drives the radicand negative
    with pytest.raises(ModelValidityError):
        equivalent_index(N, 0.02, 0.035, math.pi, PerturbationMode.EXACT_SQRT)


# ------------------------------------------------- accumulated delays


def test_straight_profile_reproduces_straight_delay_exactly():
    core = outer_core()
    assert accumulated_delay(core, STRAIGHT) == straight_delay(core, LENGTH)
    assert delay_deviation(core, STRAIGHT) == 0.0
    assert delay_deviation(core, STRAIGHT, PerturbationMode.EXACT_SQRT, steps=100) == 0.0


def test_central_core_sees_no_deviation():
    center = FIBER.core_by_id(0)
    assert delay_deviation(center, BEND35) == 0.0
    assert delay_deviation(center, BEND35, PerturbationMode.EXACT_SQRT, steps=1000) == 0.0


def test_bend_deviation_in_curvature_plane():
    # untwisted 35 mm bend, core entering in the curvature plane
    deviation = delay_deviation(outer_core(0.0), BEND35)
    assert deviation == pytest.approx(1.4690162752526612e-11, rel=1e-12)
    oracle = integrate_delay_numeric(
        outer_core(0.0), BEND35, PerturbationMode.FIRST_ORDER, 10**6
    ) - straight_delay(outer_core(0.0), LENGTH)
    assert deviation == pytest.approx(oracle, rel=1e-9)


def test_bend_deviation_at_neutral_azimuth_vanishes():
    assert abs(delay_deviation(outer_core(math.pi / 2), BEND35)) < 1e-26


def test_full_turn_of_twist_cancels_the_deviation():
    profile = DeploymentProfile((Segment(LENGTH, R35, twist_rate=math.tau / LENGTH),))
    assert abs(delay_deviation(outer_core(0.0), profile)) < 1e-26


def test_split_segments_match_single_segment():
    rate = 0.75 * math.pi / LENGTH
    single = DeploymentProfile((Segment(LENGTH, R35, twist_rate=rate),))
    split = DeploymentProfile(
        (Segment(1.2, R35, twist_rate=rate), Segment(1.8, R35, twist_rate=rate))
    )
    core = outer_core(0.3)
    assert delay_deviation(core, split) == pytest.approx(
        delay_deviation(core, single), rel=1e-13
    )


def test_exact_sqrt_deviation_constant_integrand():
    # no twist, entry in the curvature plane: the density is constant and the
    # quadrature matches sqrt arithmetic done by hand
    core = outer_core(0.0)
    deviation = delay_deviation(core, BEND35, PerturbationMode.EXACT_SQRT, steps=10)
    expected = (NG / SPEED_OF_LIGHT) * LENGTH * (math.sqrt(1.0 + 2.0 * PITCH / R35) - 1.0)
    assert deviation == pytest.approx(expected, rel=1e-12)


def test_bend_validity_guard():
    tight = DeploymentProfile((Segment(LENGTH, 0.02),))
    with pytest.raises(ModelValidityError):
        delay_deviation(outer_core(), tight)
    # the guard ratio is configurable
    assert delay_deviation(outer_core(), tight, validity_ratio=500.0) != 0.0
    # and the 35 mm bend of the 35 um ring sits exactly on the default boundary
    assert delay_deviation(outer_core(), BEND35) != 0.0


def test_integrator_argument_checks():
    with pytest.raises(ValueError):
        integrate_delay_numeric(outer_core(), BEND35, PerturbationMode.FIRST_ORDER, 0)


def test_integrator_matches_closed_form_under_twist():
    rate = 0.75 * math.pi / LENGTH
    profile = DeploymentProfile((Segment(LENGTH, R35, twist_rate=rate),))
    core = outer_core(0.7)
    closed = accumulated_delay(core, profile)
    numeric = integrate_delay_numeric(core, profile, PerturbationMode.FIRST_ORDER, 10**5)
    assert numeric == pytest.approx(closed, rel=1e-10)


def test_integrator_straight_profile_is_exact_at_one_step():
    core = outer_core()
    assert integrate_delay_numeric(
        core, STRAIGHT, PerturbationMode.FIRST_ORDER, 1
    ) == straight_delay(core, LENGTH)


# ----------------------------------------------------------- dgd matrix


def test_dgd_matrix_straight_fiber_is_all_zero():
    report = dgd_matrix(FIBER, STRAIGHT)
    assert np.all(report.dgd == 0.0)
    assert all(value == 0.0 for value in report.deviation.values())


def test_dgd_matrix_bend_pattern():
    # 35 mm bend, no twist: outer-core DGD vs center follows cos(theta0)
    report = dgd_matrix(FIBER, BEND35)
    expected_ps = [14.690163, 7.345081, -7.345081, -14.690163, -7.345081, 7.345081]
    for k, value in enumerate(expected_ps, start=1):
        assert report.dgd_between(k, 0) == pytest.approx(value * 1e-12, rel=1e-6)
    # diametrically opposed cores are equal and opposite
    for k in (1, 2, 3):
        assert abs(report.dgd_between(k, 0) + report.dgd_between(k + 3, 0)) < 1e-26


def test_dgd_matrix_structure():
    report = dgd_matrix(FIBER, BEND35)
    assert report.core_ids == tuple(range(7))
    assert np.array_equal(report.dgd, -report.dgd.T)
    assert np.all(np.diag(report.dgd) == 0.0)
    # consistency between the matrix and the per-core map
    delays = np.array([report.per_core_delay[i] for i in report.core_ids])
    assert np.array_equal(report.dgd, delays[:, None] - delays[None, :])


def test_dgd_matrix_rejects_length_mismatch():
    short = DeploymentProfile((Segment(2.0, R35),))
    with pytest.raises(ValueError, match="length"):
        dgd_matrix(FIBER, short)


def test_dgd_matrix_exact_sqrt_close_to_first_order():
    exact = dgd_matrix(FIBER, BEND35, PerturbationMode.EXACT_SQRT, steps=5000)
    first = dgd_matrix(FIBER, BEND35)
    for k in range(1, 7):
        a = exact.dgd_between(k, 0)
        b = first.dgd_between(k, 0)
        # the two modes differ at second order in r/R_b
        assert abs(a - b) <= 2.0 * (PITCH / R35) * max(abs(a), abs(b)) + 1e-30


# ------------------------------------------------------ worst-case laws


def test_worst_case_dgd_magnitudes():
    assert worst_case_dgd(NG, PITCH, LENGTH, R35, 0.0) == pytest.approx(BASE35, rel=1e-12)
    assert worst_case_dgd(NG, PITCH, LENGTH, R75, 0.0) == pytest.approx(BASE75, rel=1e-12)
    # printed-through values in ps
    assert worst_case_dgd(NG, PITCH, LENGTH, R35, 0.0) * 1e12 == pytest.approx(14.690, abs=1e-3)
    assert worst_case_dgd(NG, PITCH, LENGTH, R75, 0.0) * 1e12 == pytest.approx(6.856, abs=1e-3)


def test_worst_case_dgd_twist_reduction():
    gamma = 0.75 * math.pi / LENGTH
    with_twist = worst_case_dgd(NG, PITCH, LENGTH, R35, gamma)
    assert with_twist / BASE35 == pytest.approx(0.3001054387190354, rel=1e-12)
    assert with_twist == pytest.approx(4.408597737701033e-12, rel=1e-12)


def test_worst_case_dgd_zeroes_at_half_turn_multiples():
    for turns in (0.5, 1.0, 1.5, 3.0):
        gamma = math.tau * turns / LENGTH
        assert abs(worst_case_dgd(NG, PITCH, LENGTH, R35, gamma)) < 1e-26


def test_max_over_start_angle_dgd():
    gamma = 0.75 * math.pi / LENGTH
    value = max_over_start_angle_dgd(NG, PITCH, LENGTH, R35, gamma)
    assert value == pytest.approx(1.1520221062235894e-11, rel=1e-12)
    # numeric maximization of the closed-form deviation over the entry angle
    profile = DeploymentProfile((Segment(LENGTH, R35, twist_rate=gamma),))
    core_angles = np.linspace(0.0, math.tau, 10**4, endpoint=False)
    best = max(
        abs(delay_deviation(outer_core(float(theta)), profile)) for theta in core_angles
    )
    assert value == pytest.approx(best, rel=1e-6)


def test_max_over_start_angle_equals_worst_case_without_twist():
    assert max_over_start_angle_dgd(NG, PITCH, LENGTH, R35, 0.0) == worst_case_dgd(
        NG, PITCH, LENGTH, R35, 0.0
    )


def test_max_over_start_angle_zero_at_full_turns():
    gamma = math.tau / LENGTH  # gamma * L = 2*pi, so the half-angle sinc vanishes
    assert abs(max_over_start_angle_dgd(NG, PITCH, LENGTH, R35, gamma)) < 1e-26


def test_worst_case_argument_checks():
    with pytest.raises(ValueError):
        worst_case_dgd(NG, PITCH, LENGTH, 0.0, 0.0)
    with pytest.raises(ValueError):
        worst_case_dgd(NG, PITCH, 0.0, R35, 0.0)
    with pytest.raises(ValueError):
        max_over_start_angle_dgd(NG, -PITCH, LENGTH, R35, 0.0)

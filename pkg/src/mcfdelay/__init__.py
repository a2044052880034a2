"""Group-delay behavior of weakly coupled multicore fibers under bending and
twisting, plus the incoherent FIR microwave-photonics filter built on top of
the per-core delays."""

from .constants import SPEED_OF_LIGHT
from .errors import GeometryError, ModelValidityError, ScenarioError
from .fiber import CoreSpec, FiberSpec, seven_core_layout, straight_delay
from .deployment import DeploymentProfile, Segment, angle_at, segment_table, total_twist
from .delays import (
    DelayReport,
    PerturbationMode,
    accumulated_delay,
    delay_deviation,
    dgd_matrix,
    equivalent_index,
    integrate_delay_numeric,
    max_over_start_angle_dgd,
    sinc_u,
    worst_case_dgd,
)
from .rffilter import (
    FilterSpec,
    FrequencyResponse,
    Tap,
    build_filter_from_fiber,
    complex_response,
    fsr_estimate,
    sidelobe_level,
    transfer_function,
)
from .scenario import (
    FilterTaskResult,
    Scenario,
    ScenarioSegment,
    emit_scenario,
    load_scenario,
    parse_freq_spec,
    parse_scenario,
    run_dgd_task,
    run_filter_task,
    run_sweep_bend,
    run_sweep_twist,
)

__version__ = "0.1.0"

__all__ = [
    "SPEED_OF_LIGHT",
    "GeometryError",
    "ModelValidityError",
    "ScenarioError",
    "CoreSpec",
    "FiberSpec",
    "seven_core_layout",
    "straight_delay",
    "Segment",
    "DeploymentProfile",
    "angle_at",
    "segment_table",
    "total_twist",
    "PerturbationMode",
    "DelayReport",
    "equivalent_index",
    "accumulated_delay",
    "delay_deviation",
    "integrate_delay_numeric",
    "dgd_matrix",
    "worst_case_dgd",
    "max_over_start_angle_dgd",
    "sinc_u",
    "Tap",
    "FilterSpec",
    "FrequencyResponse",
    "build_filter_from_fiber",
    "complex_response",
    "transfer_function",
    "sidelobe_level",
    "fsr_estimate",
    "Scenario",
    "ScenarioSegment",
    "FilterTaskResult",
    "parse_scenario",
    "parse_freq_spec",
    "load_scenario",
    "emit_scenario",
    "run_dgd_task",
    "run_sweep_bend",
    "run_sweep_twist",
    "run_filter_task",
]

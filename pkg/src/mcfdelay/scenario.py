"""Scenario documents: a flat JSON schema driving every simulation task.

A scenario file looks like

    {
      "fiber":   {"pitch_um": 35.0, "clad_um": 125.0, "length_m": 3.0,
                  "n": 1.45, "ng": 1.468},
      "profile": {"segments": [{"length_m": 3.0, "bend_radius_mm": 35.0,
                                "twist_turns": 3.0, "bend_plane_deg": 0.0}]},
      "mode":    "first_order",
      "task":    {"name": "dgd", "params": {}}
    }

Values are stored in the units people write them in (micrometers,
millimeters, turns, degrees, picoseconds, gigahertz) and converted to SI on
demand, so a parse -> emit -> parse round trip reproduces the scenario
exactly.  ``bend_radius_mm`` accepts the string "straight" (or may be
omitted) for an unbent span; each segment takes at most one of
``twist_turns`` and ``twist_rad``, both meaning total twist over that
segment.

Task names and their parameters:

    dgd         no parameters
    sweep-bend  radii_mm (non-empty list), twist_turns (non-empty list)
    sweep-twist radii_mm (non-empty list), twist_turns (non-empty list)
    filter      delta_tau_ps (> 0); optional amplitudes (one per core),
                freq_ghz "start:stop:points", conditions
                [{"label": ..., "segments": [...]}]
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

from .constants import DEFAULT_GROUP_INDEX, DEFAULT_PHASE_INDEX
from .delays import (
    PerturbationMode,
    dgd_matrix,
    max_over_start_angle_dgd,
    worst_case_dgd,
)
from .deployment import DeploymentProfile, Segment
from .errors import ScenarioError
from .fiber import FiberSpec, seven_core_layout
from .rffilter import (
    FilterSpec,
    FrequencyResponse,
    build_filter_from_fiber,
    fsr_estimate,
    sidelobe_level,
    transfer_function,
)

TASK_NAMES = ("dgd", "sweep-bend", "sweep-twist", "filter")

_MODE_NAMES = {mode.value: mode for mode in PerturbationMode}

_LENGTH_MATCH_RTOL = 1e-9


@dataclass(frozen=True)
class ScenarioSegment:
    """One profile segment in document units."""

    length_m: float
    bend_radius_mm: float | None = None  # None encodes "straight"
    twist_turns: float | None = None
    twist_rad: float | None = None
    bend_plane_deg: float = 0.0

    def total_twist_rad(self) -> float:
        if self.twist_turns is not None:
            return math.tau * self.twist_turns
        if self.twist_rad is not None:
            return self.twist_rad
        return 0.0

    def to_segment(self) -> Segment:
        return Segment(
            length=self.length_m,
            bend_radius=None if self.bend_radius_mm is None else self.bend_radius_mm / 1e3,
            twist_rate=self.total_twist_rad() / self.length_m,
            bend_plane_offset=math.radians(self.bend_plane_deg),
        )


@dataclass(frozen=True)
class Scenario:
    """A validated scenario document, still in its native units."""

    pitch_um: float
    clad_um: float
    length_m: float
    n: float
    ng: float
    segments: tuple[ScenarioSegment, ...]
    mode: PerturbationMode
    task: str
    params: dict

    def to_fiber(self) -> FiberSpec:
        return seven_core_layout(
            pitch=self.pitch_um / 1e6,
            n=self.n,
            ng=self.ng,
            length=self.length_m,
            cladding_diameter=self.clad_um / 1e6,
        )

    def to_profile(
        self, segments: tuple[ScenarioSegment, ...] | None = None
    ) -> DeploymentProfile:
        specs = self.segments if segments is None else segments
        return DeploymentProfile(segments=tuple(spec.to_segment() for spec in specs))

    def with_mode(self, mode: PerturbationMode) -> "Scenario":
        return replace(self, mode=mode)


def _fail(path: str, message: str) -> None:
    raise ScenarioError(f"{path}: {message}" if path else message)


def _require_mapping(value, path: str) -> dict:
    if not isinstance(value, dict):
        _fail(path, f"expected an object, got {type(value).__name__}")
    return value


def _check_keys(obj: dict, path: str, required: set[str], optional: set[str]) -> None:
    for key in required:
        if key not in obj:
            _fail(path, f"missing required key '{key}'")
    for key in obj:
        if key not in required and key not in optional:
            _fail(path, f"unknown key '{key}'")


def _number(obj: dict, path: str, key: str, *, positive: bool = False, default=None):
    if key not in obj:
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"'{key}' must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        _fail(path, f"'{key}' must be finite, got {value!r}")
    if positive and value <= 0:
        _fail(path, f"'{key}' must be > 0, got {value}")
    return value


def _number_list(obj: dict, path: str, key: str, *, positive: bool = False) -> list[float]:
    value = obj.get(key)
    if not isinstance(value, list) or not value:
        _fail(path, f"'{key}' must be a non-empty list")
    out = []
    for i, item in enumerate(value):
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            _fail(path, f"'{key}[{i}]' must be a number, got {item!r}")
        item = float(item)
        if not math.isfinite(item) or (positive and item <= 0):
            _fail(path, f"'{key}[{i}]' must be {'> 0' if positive else 'finite'}, got {item}")
        out.append(item)
    return out


def _parse_segment(obj, path: str) -> ScenarioSegment:
    obj = _require_mapping(obj, path)
    _check_keys(
        obj,
        path,
        required={"length_m"},
        optional={"bend_radius_mm", "twist_turns", "twist_rad", "bend_plane_deg"},
    )
    length = _number(obj, path, "length_m", positive=True)
    radius = obj.get("bend_radius_mm", "straight")
    if radius == "straight":
        radius = None
    else:
        radius = _number(obj, path, "bend_radius_mm", positive=True)
    if "twist_turns" in obj and "twist_rad" in obj:
        _fail(path, "give at most one of 'twist_turns' and 'twist_rad'")
    return ScenarioSegment(
        length_m=length,
        bend_radius_mm=radius,
        twist_turns=_number(obj, path, "twist_turns"),
        twist_rad=_number(obj, path, "twist_rad"),
        bend_plane_deg=_number(obj, path, "bend_plane_deg", default=0.0),
    )


def _parse_segments(obj, path: str, fiber_length: float) -> tuple[ScenarioSegment, ...]:
    if not isinstance(obj, list) or not obj:
        _fail(path, "must be a non-empty list of segments")
    segments = tuple(_parse_segment(seg, f"{path}[{i}]") for i, seg in enumerate(obj))
    total = sum(seg.length_m for seg in segments)
    if abs(total - fiber_length) > _LENGTH_MATCH_RTOL * fiber_length:
        _fail(path, f"segment lengths sum to {total} m, fiber length is {fiber_length} m")
    return segments


def parse_freq_spec(text: str) -> tuple[float, float, int]:
    """Parse 'start:stop:points' in GHz into (f_start_hz, f_stop_hz, n_points)."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ScenarioError(f"frequency spec must be 'start:stop:points', got {text!r}")
    try:
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ScenarioError(f"frequency spec must be numeric, got {text!r}") from None
    if start < 0 or stop <= start or points < 2:
        raise ScenarioError(
            f"frequency spec needs 0 <= start < stop and points >= 2, got {text!r}"
        )
    return start * 1e9, stop * 1e9, points


_LABEL_OK = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-")


def _validate_params(task: str, params, fiber_length: float) -> dict:
    path = "task.params"
    params = _require_mapping(params, path)
    if task == "dgd":
        _check_keys(params, path, required=set(), optional=set())
    elif task in ("sweep-bend", "sweep-twist"):
        _check_keys(params, path, required={"radii_mm", "twist_turns"}, optional=set())
        _number_list(params, path, "radii_mm", positive=True)
        _number_list(params, path, "twist_turns")
    elif task == "filter":
        _check_keys(
            params,
            path,
            required={"delta_tau_ps"},
            optional={"amplitudes", "freq_ghz", "conditions"},
        )
        _number(params, path, "delta_tau_ps", positive=True)
        if "amplitudes" in params:
            amps = _number_list(params, path, "amplitudes")
            if any(a < 0 for a in amps):
                _fail(path, "'amplitudes' must all be >= 0")
        if "freq_ghz" in params:
            parse_freq_spec(params["freq_ghz"])
        if "conditions" in params:
            conditions = params["conditions"]
            if not isinstance(conditions, list) or not conditions:
                _fail(path, "'conditions' must be a non-empty list")
            labels = set()
            for i, cond in enumerate(conditions):
                cpath = f"{path}.conditions[{i}]"
                cond = _require_mapping(cond, cpath)
                _check_keys(cond, cpath, required={"label", "segments"}, optional=set())
                label = cond["label"]
                if not isinstance(label, str) or not label or set(label) - _LABEL_OK:
                    _fail(cpath, f"'label' must be a simple identifier, got {label!r}")
                if label in labels:
                    _fail(cpath, f"duplicate label {label!r}")
                labels.add(label)
                _parse_segments(cond["segments"], f"{cpath}.segments", fiber_length)
    return params


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document; raises ScenarioError on defects."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"not valid JSON: {exc}") from None
    doc = _require_mapping(doc, "")
    if not doc:
        _fail("", "scenario document is empty")
    _check_keys(doc, "", required={"fiber", "profile", "task"}, optional={"mode"})

    fiber = _require_mapping(doc["fiber"], "fiber")
    _check_keys(
        fiber,
        "fiber",
        required={"pitch_um", "clad_um", "length_m"},
        optional={"n", "ng"},
    )
    pitch_um = _number(fiber, "fiber", "pitch_um", positive=True)
    clad_um = _number(fiber, "fiber", "clad_um", positive=True)
    length_m = _number(fiber, "fiber", "length_m", positive=True)
    n = _number(fiber, "fiber", "n", positive=True, default=DEFAULT_PHASE_INDEX)
    ng = _number(fiber, "fiber", "ng", positive=True, default=DEFAULT_GROUP_INDEX)
    if pitch_um > clad_um / 2.0:
        _fail("fiber", f"pitch {pitch_um} um exceeds the cladding radius {clad_um / 2.0} um")

    profile = _require_mapping(doc["profile"], "profile")
    _check_keys(profile, "profile", required={"segments"}, optional=set())
    segments = _parse_segments(profile["segments"], "profile.segments", length_m)

    mode_name = doc.get("mode", PerturbationMode.FIRST_ORDER.value)
    if mode_name not in _MODE_NAMES:
        _fail("mode", f"must be one of {sorted(_MODE_NAMES)}, got {mode_name!r}")

    task = _require_mapping(doc["task"], "task")
    _check_keys(task, "task", required={"name"}, optional={"params"})
    name = task["name"]
    if name not in TASK_NAMES:
        _fail("task.name", f"must be one of {list(TASK_NAMES)}, got {name!r}")
    params = _validate_params(name, task.get("params", {}), length_m)

    return Scenario(
        pitch_um=pitch_um,
        clad_um=clad_um,
        length_m=length_m,
        n=n,
        ng=ng,
        segments=segments,
        mode=_MODE_NAMES[mode_name],
        task=name,
        params=params,
    )


def load_scenario(path: str | Path) -> Scenario:
    """Read and parse a scenario file."""
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def _segment_doc(spec: ScenarioSegment) -> dict:
    doc: dict = {"length_m": spec.length_m}
    doc["bend_radius_mm"] = "straight" if spec.bend_radius_mm is None else spec.bend_radius_mm
    if spec.twist_turns is not None:
        doc["twist_turns"] = spec.twist_turns
    if spec.twist_rad is not None:
        doc["twist_rad"] = spec.twist_rad
    if spec.bend_plane_deg != 0.0:
        doc["bend_plane_deg"] = spec.bend_plane_deg
    return doc


def emit_scenario(scenario: Scenario) -> str:
    """Serialize a scenario canonically; parse(emit(s)) == s."""
    doc = {
        "fiber": {
            "pitch_um": scenario.pitch_um,
            "clad_um": scenario.clad_um,
            "length_m": scenario.length_m,
            "n": scenario.n,
            "ng": scenario.ng,
        },
        "profile": {"segments": [_segment_doc(seg) for seg in scenario.segments]},
        "mode": scenario.mode.value,
        "task": {"name": scenario.task, "params": scenario.params},
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def run_dgd_task(scenario: Scenario):
    """Evaluate the dgd task: returns (fiber, delay report)."""
    fiber = scenario.to_fiber()
    return fiber, dgd_matrix(fiber, scenario.to_profile(), scenario.mode)


def _sweep_rows(scenario, key_order):
    fiber = scenario.to_fiber()
    r = fiber.max_core_offset
    length = scenario.length_m
    rows = []
    for primary in key_order[0][1]:
        for secondary in key_order[1][1]:
            values = {key_order[0][0]: primary, key_order[1][0]: secondary}
            bend_radius = values["bend_radius_m"]
            twist = values["total_twist_rad"]
            gamma = twist / length
            rows.append(
                {
                    **values,
                    "worst_case_dgd_s": worst_case_dgd(scenario.ng, r, length, bend_radius, gamma),
                    "max_start_angle_dgd_s": max_over_start_angle_dgd(
                        scenario.ng, r, length, bend_radius, gamma
                    ),
                }
            )
    return rows


def _grids(scenario: Scenario, radii, twists):
    if radii is None:
        radii = [mm / 1e3 for mm in scenario.params["radii_mm"]]
    if twists is None:
        twists = [math.tau * turns for turns in scenario.params["twist_turns"]]
    radii = sorted(float(r) for r in radii)
    twists = sorted(float(t) for t in twists)
    if not radii or not twists:
        raise ScenarioError("sweep grids must be non-empty")
    if any(r <= 0 for r in radii):
        raise ScenarioError("sweep radii must all be > 0")
    return radii, twists


def run_sweep_bend(
    scenario: Scenario,
    radii: list[float] | None = None,
    twists: list[float] | None = None,
) -> list[dict]:
    """Bend-radius sweep: one row per (radius, total twist), sorted by radius.

    ``radii`` are meters and ``twists`` total radians; both default to the
    scenario's task parameters.  Rows carry the two closed-form DGD laws.
    """
    radii, twists = _grids(scenario, radii, twists)
    return _sweep_rows(scenario, (("bend_radius_m", radii), ("total_twist_rad", twists)))


def run_sweep_twist(
    scenario: Scenario,
    radii: list[float] | None = None,
    twists: list[float] | None = None,
) -> list[dict]:
    """Twist sweep: one row per (total twist, radius), sorted by twist."""
    radii, twists = _grids(scenario, radii, twists)
    return _sweep_rows(scenario, (("total_twist_rad", twists), ("bend_radius_m", radii)))


@dataclass(frozen=True)
class FilterTaskResult:
    """Filter response and metrics for one deployment condition."""

    label: str
    filter_spec: FilterSpec
    response: FrequencyResponse
    fsr_hz: float
    sidelobe_db: float | None


def run_filter_task(
    scenario: Scenario, freq: tuple[float, float, int] | None = None
) -> list[FilterTaskResult]:
    """Evaluate the filter task over every deployment condition.

    Conditions default to the scenario's own profile under the label
    "profile".  The metric pair per condition is the estimated free spectral
    range and the sidelobe level (None when the filter has no sidelobes).
    """
    fiber = scenario.to_fiber()
    params = scenario.params
    delta_tau = params["delta_tau_ps"] / 1e12
    amplitudes = params.get("amplitudes") or [1.0] * len(fiber.cores)
    if freq is None:
        freq = parse_freq_spec(params.get("freq_ghz", "0:25:2001"))
    f_start, f_stop, n_points = freq

    if "conditions" in params:
        conditions = [
            (
                cond["label"],
                tuple(
                    _parse_segment(seg, f"conditions[{i}]")
                    for i, seg in enumerate(cond["segments"])
                ),
            )
            for cond in params["conditions"]
        ]
    else:
        conditions = [("profile", scenario.segments)]

    results = []
    for label, segment_specs in conditions:
        filter_spec = build_filter_from_fiber(
            fiber,
            scenario.to_profile(segment_specs),
            delta_tau,
            amplitudes,
            scenario.mode,
        )
        response = transfer_function(filter_spec, f_start, f_stop, n_points)
        results.append(
            FilterTaskResult(
                label=label,
                filter_spec=filter_spec,
                response=response,
                fsr_hz=fsr_estimate(response),
                sidelobe_db=sidelobe_level(response, 1.0 / delta_tau),
            )
        )
    return results

"""Delimited report output: one CSV per task, 9 significant digits, LF endings.

Every table carries the SI columns first and convenience columns (ps, mm,
turns, GHz) after them, so downstream tooling never has to guess units.
"""

from __future__ import annotations

import math
from pathlib import Path

from .delays import DelayReport
from .fiber import FiberSpec
from .scenario import FilterTaskResult


def fmt(value: float) -> str:
    """Canonical number formatting for reports: 9 significant digits."""
    return f"{float(value):.9g}"


DGD_COLUMNS = [
    "core_id",
    "radius_m",
    "theta0_rad",
    "delay_s",
    "deviation_s",
    "dgd_to_core0_s",
    "deviation_ps",
    "dgd_to_core0_ps",
]

BEND_SWEEP_COLUMNS = [
    "bend_radius_m",
    "total_twist_rad",
    "worst_case_dgd_s",
    "max_start_angle_dgd_s",
    "bend_radius_mm",
    "total_twist_turns",
    "worst_case_dgd_ps",
    "max_start_angle_dgd_ps",
]

TWIST_SWEEP_COLUMNS = [
    "total_twist_rad",
    "bend_radius_m",
    "worst_case_dgd_s",
    "max_start_angle_dgd_s",
    "total_twist_turns",
    "bend_radius_mm",
    "worst_case_dgd_ps",
    "max_start_angle_dgd_ps",
]

FILTER_COLUMNS = ["condition", "frequency_hz", "frequency_ghz", "magnitude_db"]


def reference_core_id(report: DelayReport) -> int:
    """Core the dgd table is referenced to: the on-axis core when present."""
    return 0 if 0 in report.core_ids else report.core_ids[0]


def dgd_rows(fiber: FiberSpec, report: DelayReport) -> list[list[str]]:
    ref = reference_core_id(report)
    rows = []
    for core in fiber.cores:
        dgd = report.dgd_between(core.id, ref)
        deviation = report.deviation[core.id]
        rows.append(
            [
                str(core.id),
                fmt(core.r),
                fmt(core.theta0),
                fmt(report.per_core_delay[core.id]),
                fmt(deviation),
                fmt(dgd),
                fmt(deviation * 1e12),
                fmt(dgd * 1e12),
            ]
        )
    return rows


def _sweep_row(row: dict, leading: list[str]) -> list[str]:
    out = [fmt(row[key]) for key in leading]
    out.append(fmt(row["worst_case_dgd_s"]))
    out.append(fmt(row["max_start_angle_dgd_s"]))
    for key in leading:
        if key == "bend_radius_m":
            out.append(fmt(row[key] * 1e3))
        else:
            out.append(fmt(row[key] / math.tau))
    out.append(fmt(row["worst_case_dgd_s"] * 1e12))
    out.append(fmt(row["max_start_angle_dgd_s"] * 1e12))
    return out


def bend_sweep_rows(rows: list[dict]) -> list[list[str]]:
    return [_sweep_row(row, ["bend_radius_m", "total_twist_rad"]) for row in rows]


def twist_sweep_rows(rows: list[dict]) -> list[list[str]]:
    return [_sweep_row(row, ["total_twist_rad", "bend_radius_m"]) for row in rows]


def filter_rows(results: list[FilterTaskResult]) -> list[list[str]]:
    rows = []
    for result in results:
        freqs = result.response.frequencies
        mags = result.response.magnitude_db
        for f, m in zip(freqs, mags):
            rows.append([result.label, fmt(f), fmt(f / 1e9), fmt(m)])
    return rows


def write_csv(path: str | Path, columns: list[str], rows: list[list[str]]) -> None:
    """Write a one-line-header, comma-separated, LF-terminated table."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(columns)]
    lines.extend(",".join(row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")

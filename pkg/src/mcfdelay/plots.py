"""Figure rendering for task reports: one PNG next to each CSV."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .delays import DelayReport
from .fiber import FiberSpec
from .report import reference_core_id
from .scenario import FilterTaskResult

_DPI = 150


def _save(fig, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def plot_dgd(fiber: FiberSpec, report: DelayReport, path: str | Path) -> None:
    """Per-core delay deviation and DGD against the reference core."""
    ref = reference_core_id(report)
    ids = [core.id for core in fiber.cores]
    dgd_ps = [report.dgd_between(core.id, ref) * 1e12 for core in fiber.cores]
    labels = [f"{core.id}\n{math.degrees(core.theta0):.0f}°" for core in fiber.cores]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.bar(range(len(ids)), dgd_ps, color="tab:blue")
    ax.set_xticks(range(len(ids)), labels)
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xlabel("core id / input azimuth")
    ax.set_ylabel(f"DGD vs core {ref} (ps)")
    ax.set_title("Per-core differential group delay")
    ax.grid(True, axis="y", alpha=0.3)
    _save(fig, path)


def _sweep_series(rows: list[dict], group_key: str, x_key: str):
    groups: dict[float, list[dict]] = {}
    for row in rows:
        groups.setdefault(row[group_key], []).append(row)
    for value in sorted(groups):
        series = sorted(groups[value], key=lambda r: r[x_key])
        yield value, series


def plot_bend_sweep(rows: list[dict], path: str | Path) -> None:
    """Worst-case DGD against bend radius, one curve per total twist."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for twist, series in _sweep_series(rows, "total_twist_rad", "bend_radius_m"):
        x = [row["bend_radius_m"] * 1e3 for row in series]
        label = f"{twist / math.tau:g} turns"
        ax.plot(x, [row["worst_case_dgd_s"] * 1e12 for row in series], marker="o", label=label)
        ax.plot(
            x,
            [row["max_start_angle_dgd_s"] * 1e12 for row in series],
            linestyle="--",
            alpha=0.6,
        )
    ax.set_xlabel("bend radius (mm)")
    ax.set_ylabel("accumulated DGD (ps)")
    ax.set_title("DGD vs bend radius (dashed: max over entry angle)")
    ax.grid(True, alpha=0.3)
    ax.legend(title="total twist")
    _save(fig, path)


def plot_twist_sweep(rows: list[dict], path: str | Path) -> None:
    """Worst-case DGD against total twist, one curve per bend radius."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for radius, series in _sweep_series(rows, "bend_radius_m", "total_twist_rad"):
        x = [row["total_twist_rad"] / math.tau for row in series]
        label = f"{radius * 1e3:g} mm"
        ax.plot(x, [row["worst_case_dgd_s"] * 1e12 for row in series], marker="o", label=label)
        ax.plot(
            x,
            [row["max_start_angle_dgd_s"] * 1e12 for row in series],
            linestyle="--",
            alpha=0.6,
        )
    ax.set_xlabel("total twist (turns)")
    ax.set_ylabel("accumulated DGD (ps)")
    ax.set_title("DGD vs twist (dashed: max over entry angle)")
    ax.grid(True, alpha=0.3)
    ax.legend(title="bend radius")
    _save(fig, path)


def plot_filter(results: list[FilterTaskResult], path: str | Path) -> None:
    """Magnitude responses of every deployment condition on one axis."""
    fig, ax = plt.subplots(figsize=(7.2, 4.2))
    for result in results:
        ax.plot(
            result.response.frequencies / 1e9,
            result.response.magnitude_db,
            label=result.label,
            linewidth=1.1,
        )
    ax.set_xlabel("frequency (GHz)")
    ax.set_ylabel("magnitude (dB)")
    ax.set_ylim(-60, 3)
    ax.set_title("FIR filter response by deployment condition")
    ax.grid(True, alpha=0.3)
    ax.legend()
    _save(fig, path)

"""Command-line front end: run a scenario file, write its CSV and figure.

Exit codes: 0 on success, 2 for argument/scenario/validation problems,
3 when inputs fall outside the perturbation model's domain.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import plots, report
from .delays import PerturbationMode
from .errors import ModelValidityError, ScenarioError
from .scenario import (
    Scenario,
    load_scenario,
    parse_freq_spec,
    run_dgd_task,
    run_filter_task,
    run_sweep_bend,
    run_sweep_twist,
)


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--scenario", required=True, help="path to the scenario JSON file")
    sub.add_argument("--out", default=None, help="output CSV path (default: <task>.csv)")
    sub.add_argument(
        "--mode",
        choices=[mode.value for mode in PerturbationMode],
        default=None,
        help="override the scenario's perturbation mode",
    )
    sub.add_argument(
        "--no-plot",
        action="store_true",
        help="skip rendering the PNG figure next to the CSV",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcfdelay",
        description="Group-delay and RF-filter simulations for bent, twisted multicore fibers",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    dgd = subparsers.add_parser("dgd", help="per-core delays and the DGD table")
    _add_common(dgd)

    sweep_bend = subparsers.add_parser("sweep-bend", help="DGD laws over a bend-radius grid")
    _add_common(sweep_bend)
    sweep_bend.add_argument(
        "--radii-mm", type=_float_list, default=None, help="override radii grid, mm"
    )
    sweep_bend.add_argument(
        "--twist-turns", type=_float_list, default=None, help="override twist grid, turns"
    )

    sweep_twist = subparsers.add_parser("sweep-twist", help="DGD laws over a twist grid")
    _add_common(sweep_twist)
    sweep_twist.add_argument(
        "--radii-mm", type=_float_list, default=None, help="override radii grid, mm"
    )
    sweep_twist.add_argument(
        "--twist-turns", type=_float_list, default=None, help="override twist grid, turns"
    )

    filt = subparsers.add_parser("filter", help="FIR filter responses and metrics")
    _add_common(filt)
    filt.add_argument(
        "--freq-ghz", default=None, help="frequency grid as start:stop:points, GHz"
    )

    return parser


def _sweep_overrides(args) -> tuple[list[float] | None, list[float] | None]:
    radii = None if args.radii_mm is None else [mm / 1e3 for mm in args.radii_mm]
    twists = None if args.twist_turns is None else [math.tau * t for t in args.twist_turns]
    return radii, twists


def _run(args) -> int:
    scenario = load_scenario(args.scenario)
    if scenario.task != args.command:
        raise ScenarioError(
            f"scenario declares task '{scenario.task}' but the "
            f"'{args.command}' subcommand was invoked"
        )
    if args.mode is not None:
        scenario = scenario.with_mode(PerturbationMode(args.mode))
    out = Path(args.out) if args.out else Path(f"{args.command}.csv")
    png = out.with_suffix(".png")

    if args.command == "dgd":
        fiber, delay_report = run_dgd_task(scenario)
        report.write_csv(out, report.DGD_COLUMNS, report.dgd_rows(fiber, delay_report))
        ref = report.reference_core_id(delay_report)
        worst = max(
            abs(delay_report.dgd_between(core.id, ref)) for core in fiber.cores
        )
        print(f"max |DGD| vs core {ref}: {report.fmt(worst * 1e12)} ps")
        if not args.no_plot:
            plots.plot_dgd(fiber, delay_report, png)
            print(f"wrote {png}")
    elif args.command == "sweep-bend":
        radii, twists = _sweep_overrides(args)
        rows = run_sweep_bend(scenario, radii, twists)
        report.write_csv(out, report.BEND_SWEEP_COLUMNS, report.bend_sweep_rows(rows))
        print(f"{len(rows)} sweep rows")
        if not args.no_plot:
            plots.plot_bend_sweep(rows, png)
            print(f"wrote {png}")
    elif args.command == "sweep-twist":
        radii, twists = _sweep_overrides(args)
        rows = run_sweep_twist(scenario, radii, twists)
        report.write_csv(out, report.TWIST_SWEEP_COLUMNS, report.twist_sweep_rows(rows))
        print(f"{len(rows)} sweep rows")
        if not args.no_plot:
            plots.plot_twist_sweep(rows, png)
            print(f"wrote {png}")
    else:
        freq = None if args.freq_ghz is None else parse_freq_spec(args.freq_ghz)
        results = run_filter_task(scenario, freq)
        report.write_csv(out, report.FILTER_COLUMNS, report.filter_rows(results))
        for result in results:
            sidelobe = "none" if result.sidelobe_db is None else report.fmt(result.sidelobe_db)
            print(
                f"condition={result.label} fsr_ghz={report.fmt(result.fsr_hz / 1e9)} "
                f"sidelobe_db={sidelobe}"
            )
        if not args.no_plot:
            plots.plot_filter(results, png)
            print(f"wrote {png}")

    print(f"wrote {out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ModelValidityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

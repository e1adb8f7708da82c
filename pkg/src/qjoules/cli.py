# -*- coding: utf-8 -*-
"""
command line front end

    qjoules estimate <workload.json>
    qjoules sweep <workload.json> --param ftqc.logical.t_count --values 0,1e3,1e6
    qjoules profiles list | show <key>
    qjoules decoders show
    qjoules speedup <quantum_watts> <classical_watts>

exit codes: 0 ok, 1 invalid input, 2 infeasible model, 3 unreadable file
"""

from __future__ import annotations

__copyright__ = "Copyright (c) 2026 qjoules contributors"

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, TextIO

from qjoules.document import Document
from qjoules.errors import QjoulesError, ValidationError
from qjoules.estimate import (
    EstimateOptions,
    MaintenanceMode,
    parseSweepValues,
    renderSweep,
    runEstimate,
    runSweep,
)
from qjoules.hardware import (
    Catalog,
    DecoderTable,
    Interpolation,
    builtinDecoderTable,
    loadDecoderTable,
)
from qjoules.overhead import requiredSpeedup
from qjoules.report import ReportFormat, renderReport

__all__ = ["main", "buildParser"]

logger = logging.getLogger(__name__)


def _formatFlag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=[f.value for f in ReportFormat], default="table",
        help="table (kJ, human readable) or machine (json, plain joules)",
    )


def _profileFlags(parser: argparse.ArgumentParser) -> None:
    _formatFlag(parser)
    parser.add_argument(
        "--profile-file", action="append", default=[], metavar="PATH",
        help="register an extra technology profile (repeatable)",
    )


def _decoderFlags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--decoder-table", metavar="PATH",
        help="csv rows decoder,d,area_mm2,power_watts,latency_ns replacing the builtin table",
    )
    parser.add_argument(
        "--interpolation", choices=[i.value for i in Interpolation], default="piecewise_linear",
        help="decoder lookup policy for untabulated distances",
    )


def _estimating(parser: argparse.ArgumentParser) -> None:
    _profileFlags(parser)
    _decoderFlags(parser)
    parser.add_argument(
        "--maintenance", choices=[m.value for m in MaintenanceMode], default="flag",
        help="E_sys when gate energies already include cooling (default: flag)",
    )
    parser.add_argument(
        "--duration-model", action="store_true",
        help="estimate NISQ wall time from depth and gate durations when qpu_seconds is absent",
    )


def buildParser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qjoules",
        description="energy and power estimates of NISQ and fault-tolerant quantum workloads",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    verbs = parser.add_subparsers(dest="command", required=True)

    estimate = verbs.add_parser("estimate", help="estimate one workload file")
    estimate.add_argument("workload")
    _estimating(estimate)

    sweep = verbs.add_parser("sweep", help="estimate a workload over values of one field")
    sweep.add_argument("workload")
    sweep.add_argument("--param", required=True, help="dotted path, e.g. nisq.qem.shots")
    sweep.add_argument("--values", required=True, help="comma separated numbers")
    sweep.add_argument("--jobs", type=int, default=1, help="sweep points evaluated in parallel")
    _estimating(sweep)

    profiles = verbs.add_parser("profiles", help="technology profiles")
    profileVerbs = profiles.add_subparsers(dest="action", required=True)
    _profileFlags(profileVerbs.add_parser("list"))
    show = profileVerbs.add_parser("show")
    show.add_argument("key")
    _profileFlags(show)

    decoders = verbs.add_parser("decoders", help="decoder hardware table")
    decoderVerbs = decoders.add_subparsers(dest="action", required=True)
    showTable = decoderVerbs.add_parser("show")
    _formatFlag(showTable)
    _decoderFlags(showTable)

    speedup = verbs.add_parser("speedup", help="break-even quantum speedup")
    speedup.add_argument("quantum_watts", type=float)
    speedup.add_argument("classical_watts", type=float)
    return parser


def _catalog(args: argparse.Namespace) -> Catalog:
    catalog = Catalog()
    for path in args.profile_file:
        catalog.loadProfileFile(path)
    return catalog


def _decoders(args: argparse.Namespace) -> DecoderTable:
    interpolation = Interpolation(args.interpolation)
    if args.decoder_table:
        return loadDecoderTable(args.decoder_table, interpolation)
    return builtinDecoderTable().withInterpolation(interpolation)


def _options(args: argparse.Namespace) -> EstimateOptions:
    return EstimateOptions(
        maintenance=MaintenanceMode(args.maintenance),
        durationModel=args.duration_model,
        catalog=_catalog(args),
        decoders=_decoders(args),
    )


def _estimate(args: argparse.Namespace) -> str:
    report = runEstimate(args.workload, _options(args))
    return renderReport(report, ReportFormat(args.format))


def _sweep(args: argparse.Namespace) -> str:
    rows = runSweep(
        args.workload, args.param, parseSweepValues(args.values), _options(args), args.jobs
    )
    return renderSweep(args.param, rows, ReportFormat(args.format))


def _profiles(args: argparse.Namespace) -> str:
    catalog = _catalog(args)
    machine = ReportFormat(args.format) is ReportFormat.MACHINE
    if args.action == "show":
        profile = catalog.resolve(args.key)
        return Document(profile.toDict()).toString()
    if machine:
        return Document({"profiles": catalog.keys()}).toString()
    lines = []
    for key in catalog.keys():
        origin = "builtin" if catalog.isBuiltin(key) else "file"
        lines.append(f"{key:<20}{origin:<9}{catalog.resolve(key).description}")
    return "\n".join(lines) + "\n"


def _decoderTable(args: argparse.Namespace) -> str:
    table = _decoders(args)
    if ReportFormat(args.format) is ReportFormat.MACHINE:
        return Document({
            "interpolation": table.interpolation.value,
            "entries": [entry.toDict() for entry in table.entries],
        }).toString()
    lines = [f"{'decoder':<9}{'d':>4}{'area (mm2)':>12}{'power (W)':>11}{'latency (ns)':>14}"]
    for kind, entries in table.rows.items():
        for entry in entries:
            lines.append(
                f"{kind.value:<9}{entry.distance:>4}{entry.areaMm2:>12.2f}"
                f"{entry.powerWatts:>11.2f}{entry.latencySeconds * 1e9:>14.1f}"
            )
    return "\n".join(lines) + "\n"


def _speedup(args: argparse.Namespace) -> str:
    factor = requiredSpeedup(args.quantum_watts, args.classical_watts)
    return f"required speedup: {factor:g}x\n"


_COMMANDS: Dict[str, Callable[[argparse.Namespace], str]] = {
    "estimate": _estimate,
    "sweep": _sweep,
    "profiles": _profiles,
    "decoders": _decoderTable,
    "speedup": _speedup,
}


def main(
    argv: Optional[List[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """runs one command; output is written only when the command succeeded"""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = buildParser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for infeasible models
        return 0 if exc.code in (0, None) else ValidationError.exitCode
    logging.basicConfig(
        stream=stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    logger.debug("command: %s", args.command)
    try:
        output = _COMMANDS[args.command](args)
    except QjoulesError as exc:
        stderr.write(f"qjoules: error: {exc}\n")
        return exc.exitCode
    stdout.write(output)
    return 0

# -*- coding: utf-8 -*-
"""workload -> EnergyReport, single runs and parameter sweeps"""

from __future__ import annotations

__copyright__ = "Copyright (c) 2026 qjoules contributors"

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, List, Optional, Sequence, Tuple, Union

from qjoules.document import Document
from qjoules.errors import ValidationError
from qjoules.ftqc import FtqcBreakdown, ftqcExecEnergy
from qjoules.hardware import Catalog, DecoderTable, TechnologyProfile, builtinDecoderTable
from qjoules.nisq import (
    NisqBreakdown,
    estimateNisqDuration,
    nisqExecEnergy,
    nisqPower,
    vqeBreakdown,
)
from qjoules.overhead import classicalBreakdown, maintenanceEnergy, totalEnergy
from qjoules.report import EnergyReport, ReportFormat, humanizeJoules
from qjoules.types import JObject
from qjoules.workload import NisqWorkload, Regime, WorkloadSpec, parseWorkloadObject, workloadToDict

__all__ = [
    "MaintenanceMode",
    "EstimateOptions",
    "estimateWorkload",
    "runEstimate",
    "SweepRow",
    "parseSweepValues",
    "runSweep",
    "renderSweep",
]

logger = logging.getLogger(__name__)

SweepValue = Union[int, float]


class MaintenanceMode(Enum):
    """what to do with E_sys when gate energies already include cooling"""

    INCLUDE = "include"
    EXCLUDE = "exclude"
    FLAG = "flag"


@dataclass(frozen=True)
class EstimateOptions:
    maintenance: MaintenanceMode = MaintenanceMode.FLAG
    durationModel: bool = False
    catalog: Catalog = field(default_factory=Catalog)
    decoders: DecoderTable = field(default_factory=builtinDecoderTable)


def _nisqExec(
    nisq: NisqWorkload, profile: TechnologyProfile, options: EstimateOptions, baseDir: str
) -> Tuple[NisqBreakdown, Optional[float], int]:
    """breakdown, modelled duration (if enabled) and physical qubit count"""
    if nisq.vqe is not None:
        return vqeBreakdown(nisq.vqe, profile, nisq.qem), None, 0
    assert nisq.qem is not None
    base = nisq.baseCounts(baseDir)
    breakdown = nisqExecEnergy(base, nisq.qem, profile)
    duration = estimateNisqDuration(base, nisq.qem, profile) if options.durationModel else None
    return breakdown, duration, base.qubitCount


def estimateWorkload(
    spec: WorkloadSpec, options: Optional[EstimateOptions] = None, baseDir: str = "."
) -> EnergyReport:
    """
    E_tot of one workload

    the wall time is the measured qpu_seconds when given, else the modelled
    time (FTQC always, NISQ with the duration model); without one no power
    and no maintenance are reported
    """
    options = options or EstimateOptions()
    profile = options.catalog.resolve(spec.technology)

    nisq: Optional[NisqBreakdown] = None
    ftqc: Optional[FtqcBreakdown] = None
    if spec.regime is Regime.NISQ:
        assert spec.nisq is not None
        nisq, modelled, physicalQubits = _nisqExec(spec.nisq, profile, options, baseDir)
    else:
        assert spec.ftqc is not None
        ftqc = ftqcExecEnergy(spec.ftqc, profile, options.decoders, spec.qpuSeconds)
        modelled, physicalQubits = ftqc.wallSeconds, ftqc.physicalQubits
    duration = spec.qpuSeconds if spec.qpuSeconds is not None else modelled

    advisories: List[str] = []
    eSys, computedSys = 0.0, None
    if duration is None:
        advisories.append(
            "no wall time (set qpu_seconds or use the duration model): "
            "maintenance energy and power are not reported"
        )
    else:
        charge = maintenanceEnergy(profile, duration, physicalQubits)
        computedSys = charge.joules
        if not charge.coolingDoubleCounted or options.maintenance is MaintenanceMode.INCLUDE:
            eSys = charge.joules
        if charge.coolingDoubleCounted and options.maintenance is MaintenanceMode.INCLUDE:
            advisories.append(
                f"gate energies of {profile.key} already include cooling; "
                f"the included maintenance {humanizeJoules(charge.joules)} may double count it"
            )
        elif charge.coolingDoubleCounted and options.maintenance is MaintenanceMode.FLAG:
            advisories.append(
                f"maintenance {humanizeJoules(charge.joules)} not added: gate energies of "
                f"{profile.key} already include cooling (--maintenance include adds it)"
            )

    classical = None
    if spec.classical is not None:
        classical = classicalBreakdown(spec.classical.resolve(baseDir))

    report = totalEnergy(
        eSys, classical.total if classical is not None else 0.0, nisq, ftqc, spec.name
    )
    report.durationSeconds = duration
    report.powerWatts = nisqPower(report.eTot, duration) if duration is not None else None
    report.metrics["maintenance_joules_computed"] = computedSys
    if classical is not None:
        report.metrics["classical"] = classical.toDict()
    report.inputs = {
        "workload": workloadToDict(spec),
        "profile": profile.toDict(),
        "maintenance_mode": options.maintenance.value,
    }
    for advisory in advisories:
        logger.warning("%s: %s", spec.name, advisory)
        report.advise(advisory)
    return report


def runEstimate(path: str, options: Optional[EstimateOptions] = None) -> EnergyReport:
    """estimates a workload file; relative file references resolve next to it"""
    document = Document.fromFile(path)
    spec = parseWorkloadObject(document.toDict())
    return estimateWorkload(spec, options, os.path.dirname(path) or ".")


@dataclass(frozen=True)
class SweepRow:
    value: SweepValue
    report: EnergyReport

    def toDict(self) -> JObject:
        return {
            "value": self.value,
            "e_tot_joules": self.report.eTot,
            "dominant_term": self.report.dominantTerm(),
        }


def parseSweepValues(text: str) -> List[SweepValue]:
    """
    comma separated numbers: ``0,1e3,1e6``

    integral values become ints so integer fields accept them
    """
    values: List[SweepValue] = []
    for raw in (part.strip() for part in text.split(",")):
        if not raw:
            continue
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(f"sweep value {raw!r} is not a number", ["values"], "type")
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        values.append(value)
    return values


def _sweepPoint(document: Document, param: str, value: SweepValue) -> WorkloadSpec:
    point = document.copy()
    chain = point.chain()
    current: Any = chain.resolve(param)
    if isinstance(current, bool) or not isinstance(current, (int, float)):
        raise ValidationError(
            f"{param} is not a numeric field (holds {type(current).__name__})", [param], "type"
        )
    chain.assign(param, value)
    return parseWorkloadObject(point.toDict())


def runSweep(
    path: str,
    param: str,
    values: Sequence[SweepValue],
    options: Optional[EstimateOptions] = None,
    jobs: int = 1,
) -> List[SweepRow]:
    """
    one report per value, in input order

    every point is validated before any is estimated
    """
    if not values:
        return []
    if jobs < 1:
        raise ValidationError(f"jobs must be >= 1, got {jobs}", ["jobs"], "min")
    options = options or EstimateOptions()
    document = Document.fromFile(path)
    baseDir = os.path.dirname(path) or "."
    specs = [_sweepPoint(document, param, value) for value in values]

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        reports = list(pool.map(lambda spec: estimateWorkload(spec, options, baseDir), specs))
    logger.debug("swept %s over %d values", param, len(values))
    return [SweepRow(value, report) for value, report in zip(values, reports)]


def renderSweep(param: str, rows: Sequence[SweepRow], fmt: ReportFormat = ReportFormat.TABLE) -> str:
    """flat (value, E_tot, dominant term) table"""
    if fmt is ReportFormat.MACHINE:
        return Document({"param": param, "rows": [row.toDict() for row in rows]}).toString()
    if not rows:
        return ""
    lines = [f"{param:<28}{'E_tot (J)':>22}  dominant_term"]
    for row in rows:
        lines.append(f"{row.value!s:<28}{row.report.eTot:>22.6e}  {row.report.dominantTerm()}")
    return "\n".join(lines) + "\n"

# -*- coding: utf-8 -*-
"""
common overhead: classical job-boundary energy, maintenance, the total

E_tot = E_sys + E_cls + E_exec (exactly one regime)
"""

from __future__ import annotations

__copyright__ = "Copyright (c) 2026 qjoules contributors"

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from qjoules.document import readText
from qjoules.errors import ValidationError
from qjoules.ftqc import FtqcBreakdown
from qjoules.hardware import TechnologyProfile
from qjoules.interfaces.common import IBreakdown
from qjoules.nisq import NisqBreakdown
from qjoules.report import EnergyReport
from qjoules.types import JObject

__all__ = [
    "PowerSeries",
    "PueProfile",
    "ClassicalOverheadSpec",
    "ClassicalBreakdown",
    "MaintenanceCharge",
    "integratePower",
    "classicalBreakdown",
    "classicalEnergy",
    "loadPowerSeries",
    "maintenanceEnergy",
    "totalEnergy",
    "requiredSpeedup",
]

logger = logging.getLogger(__name__)

Sample = Tuple[float, float]


@dataclass(frozen=True)
class PowerSeries:
    """counter samples (t_seconds, power_watts) of one subsystem"""

    label: str
    samples: Tuple[Sample, ...]

    def __post_init__(self) -> None:
        if not self.samples:
            raise ValidationError(f"series {self.label!r} has no samples", ["samples"], "min")
        for index, (t, power) in enumerate(self.samples):
            if t < 0 or power < 0:
                raise ValidationError(
                    f"series {self.label!r}: time and power must be >= 0",
                    ["samples", f"[{index}]"],
                    "min",
                )
        times = [t for t, _ in self.samples]
        if any(a >= b for a, b in zip(times, times[1:])):
            raise ValidationError(
                f"series {self.label!r}: timestamps must be strictly increasing",
                ["samples"],
                "increasing",
            )

    @property
    def start(self) -> float:
        return self.samples[0][0]

    @property
    def end(self) -> float:
        return self.samples[-1][0]


@dataclass(frozen=True)
class PueProfile:
    """step function (t_start, pue); the first step starts at 0"""

    intervals: Tuple[Sample, ...] = ((0.0, 1.0),)

    def __post_init__(self) -> None:
        if not self.intervals or self.intervals[0][0] != 0:
            raise ValidationError("the first pue interval must start at 0", ["pue"], "min")
        starts = [t for t, _ in self.intervals]
        if any(a >= b for a, b in zip(starts, starts[1:])):
            raise ValidationError("pue interval starts must be strictly increasing", ["pue"], "increasing")
        for index, (_, pue) in enumerate(self.intervals):
            if not pue >= 1.0:
                raise ValidationError(f"pue must be >= 1, got {pue}", ["pue", f"[{index}]"], "min")

    def spans(self) -> List[Tuple[float, float, float]]:
        """(start, end, pue) with the last step open-ended"""
        ends = [t for t, _ in self.intervals[1:]] + [math.inf]
        return [(start, end, pue) for (start, pue), end in zip(self.intervals, ends)]


@dataclass(frozen=True)
class ClassicalOverheadSpec:
    """inputs of E_cls = PUE(t) * E_IT + E_shared + E_net,WAN + E_storage"""

    itSeries: Tuple[PowerSeries, ...] = ()
    pue: PueProfile = field(default_factory=PueProfile)
    sharedJoules: float = 0.0
    netWanJoules: float = 0.0
    storageJoules: float = 0.0

    def __post_init__(self) -> None:
        for name, value in (("shared_joules", self.sharedJoules),
                            ("net_wan_joules", self.netWanJoules),
                            ("storage_joules", self.storageJoules)):
            if not (math.isfinite(value) and value >= 0):
                raise ValidationError(f"{name} must be finite and >= 0, got {value}", [name], "min")


@dataclass(frozen=True)
class ClassicalBreakdown:
    itJoulesBySeries: Dict[str, float]
    facilityJoules: float
    sharedJoules: float
    netWanJoules: float
    storageJoules: float

    @property
    def total(self) -> float:
        return math.fsum(
            (self.facilityJoules, self.sharedJoules, self.netWanJoules, self.storageJoules)
        )

    def toDict(self) -> JObject:
        return {
            "it_joules_by_series": dict(self.itJoulesBySeries),
            "pue_weighted_it_joules": self.facilityJoules,
            "shared_joules": self.sharedJoules,
            "net_wan_joules": self.netWanJoules,
            "storage_joules": self.storageJoules,
        }


@dataclass(frozen=True)
class MaintenanceCharge:
    """E_sys and whether gate energies already carry the cooling load"""

    joules: float
    coolingDoubleCounted: bool


def _trapezoid(times: np.ndarray, power: np.ndarray) -> float:
    return math.fsum(np.diff(times) * (power[1:] + power[:-1]) / 2)


def integratePower(series: PowerSeries, window: Optional[Tuple[float, float]] = None) -> float:
    """
    trapezoidal energy of the series, optionally restricted to [t0, t1]

    window edges between samples are linearly interpolated
    """
    times = np.array([t for t, _ in series.samples], dtype=float)
    power = np.array([p for _, p in series.samples], dtype=float)
    if window is None:
        return _trapezoid(times, power) if len(times) > 1 else 0.0

    t0, t1 = window
    if t0 > t1 or t0 < series.start or t1 > series.end:
        raise ValidationError(
            f"window ({t0}, {t1}) outside the sample range ({series.start}, {series.end})",
            ["window"],
            "range",
        )
    if t0 == t1:
        return 0.0
    if len(times) < 2:
        raise ValidationError("a non-empty window needs at least 2 samples", ["window"], "min")

    inner = times[(times > t0) & (times < t1)]
    clipped = np.concatenate(([t0], inner, [t1]))
    return _trapezoid(clipped, np.interp(clipped, times, power))


def classicalBreakdown(spec: ClassicalOverheadSpec) -> ClassicalBreakdown:
    """IT energy split by pue interval, each part weighted by its own pue"""
    itBySeries: Dict[str, float] = {}
    weighted: List[float] = []
    for series in spec.itSeries:
        parts: List[float] = []
        for start, end, pue in spec.pue.spans():
            lo, hi = max(start, series.start), min(end, series.end)
            if lo >= hi:
                continue
            joules = integratePower(series, (lo, hi))
            parts.append(joules)
            weighted.append(pue * joules)
        itBySeries[series.label] = itBySeries.get(series.label, 0.0) + math.fsum(parts)

    breakdown = ClassicalBreakdown(
        itBySeries,
        math.fsum(weighted),
        spec.sharedJoules,
        spec.netWanJoules,
        spec.storageJoules,
    )
    logger.debug("classical overhead: %s", breakdown.toDict())
    return breakdown


def classicalEnergy(spec: ClassicalOverheadSpec) -> float:
    """E_cls in joules"""
    return classicalBreakdown(spec).total


def loadPowerSeries(path: str) -> List[PowerSeries]:
    """
    reads counter rows ``label,t_seconds,power_watts``

    rows of one label must be time-ordered; labels keep first-seen order
    """
    samples: Dict[str, List[Sample]] = {}
    reader = csv.reader(io.StringIO(readText(path)))
    for number, row in enumerate(reader, start=1):
        cells = [cell.strip() for cell in row]
        if not cells or not any(cells) or cells[0].startswith("#"):
            continue
        if number == 1 and cells[0].lower() == "label":
            continue
        if len(cells) != 3:
            raise ValidationError(f"{path}:{number}: expected 3 columns, got {len(cells)}", [], "csv")
        try:
            sample = (float(cells[1]), float(cells[2]))
        except ValueError as exc:
            raise ValidationError(f"{path}:{number}: {exc}", [], "csv") from exc
        samples.setdefault(cells[0], []).append(sample)
    return [PowerSeries(label, tuple(rows)) for label, rows in samples.items()]


def maintenanceEnergy(
    profile: TechnologyProfile, wallSeconds: float, physicalQubits: int = 0
) -> MaintenanceCharge:
    """E_sys = (P_maint + per-qubit P * qubits) * wall time"""
    if wallSeconds < 0:
        raise ValidationError(f"duration must be >= 0, got {wallSeconds}", ["qpu_seconds"], "min")
    watts = profile.maintenancePowerWatts + profile.maintenanceWattsPerQubit * physicalQubits
    return MaintenanceCharge(watts * wallSeconds, profile.coolingIncludedInGateEnergy)


def totalEnergy(
    eSys: float,
    eCls: float,
    nisq: Optional[NisqBreakdown] = None,
    ftqc: Optional[FtqcBreakdown] = None,
    name: str = "",
) -> EnergyReport:
    """
    composes the report; exactly one execution term

    the report items re-sum to E_tot
    """
    terms: Sequence[Optional[IBreakdown]] = (nisq, ftqc)
    supplied = [term for term in terms if term is not None]
    if len(supplied) != 1:
        raise ValidationError(
            f"exactly one execution term is required, got {len(supplied)}", ["regime"], "oneOf"
        )
    if eSys < 0 or eCls < 0:
        raise ValidationError("E_sys and E_cls must be >= 0", [], "min")

    execution = supplied[0]
    items = {"system": eSys, "classical": eCls, **execution.ledger()}
    return EnergyReport(
        name=name,
        regime=execution.regime,
        items=items,
        eTot=math.fsum(items.values()),
        metrics=execution.metrics(),
    )


def requiredSpeedup(quantumContinuousWatts: float, classicalWatts: float) -> float:
    """runtime speedup at which equal-work energies break even"""
    if not quantumContinuousWatts > 0 or not classicalWatts > 0:
        raise ValidationError(
            f"powers must be > 0, got {quantumContinuousWatts}, {classicalWatts}", [], "min"
        )
    return quantumContinuousWatts / classicalWatts

# -*- coding: utf-8 -*-
"""energy reports: the itemized E_tot, table and machine renderings"""

from __future__ import annotations

__copyright__ = "Copyright (c) 2026 qjoules contributors"

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from qjoules.document import Document
from qjoules.errors import ValidationError
from qjoules.schema import Array, Mapping, Number, Object, String
from qjoules.types import JObject

__all__ = [
    "EnergyReport",
    "ReportFormat",
    "renderReport",
    "parseReport",
    "humanizeJoules",
]

_UNITS = (("TJ", 1e12), ("GJ", 1e9), ("MJ", 1e6), ("kJ", 1e3))


def humanizeJoules(joules: float) -> str:
    """2662200000.0 -> '2.662 GJ'"""
    for unit, scale in _UNITS:
        if abs(joules) >= scale:
            return f"{joules / scale:.4g} {unit}"
    return f"{joules:.4g} J"


def _humanizeSeconds(seconds: float) -> str:
    for unit, scale in (("s", 1.0), ("ms", 1e-3), ("us", 1e-6)):
        if seconds >= scale:
            return f"{seconds / scale:.4g} {unit}"
    return f"{seconds / 1e-9:.4g} ns"


@dataclass
class EnergyReport:
    """
    E_tot = sum of items

    common items are ``system`` and ``classical``; the remaining items are
    the ledger of the execution regime
    """

    name: str
    regime: str
    items: Dict[str, float]
    eTot: float
    powerWatts: Optional[float] = None
    durationSeconds: Optional[float] = None
    advisories: List[str] = field(default_factory=list)
    metrics: JObject = field(default_factory=dict)
    inputs: JObject = field(default_factory=dict)

    @property
    def execJoules(self) -> float:
        """E_tot without the common overhead"""
        return math.fsum(v for k, v in self.items.items() if k not in ("system", "classical"))

    @property
    def execFraction(self) -> float:
        return self.execJoules / self.eTot if self.eTot else 0.0

    def dominantTerm(self) -> str:
        """the largest item; the first one on ties"""
        return max(self.items, key=lambda key: self.items[key])

    def advise(self, message: str) -> None:
        self.advisories.append(message)

    def toDict(self) -> JObject:
        """canonical key order of the machine format"""
        return {
            "name": self.name,
            "regime": self.regime,
            "items": dict(self.items),
            "e_tot_joules": self.eTot,
            "power_watts": self.powerWatts,
            "duration_seconds": self.durationSeconds,
            "dominant_term": self.dominantTerm(),
            "advisories": list(self.advisories),
            "metrics": self.metrics,
            "inputs": self.inputs,
        }

    @staticmethod
    def fromDict(data: JObject) -> EnergyReport:
        """validates and rebuilds a machine-format report"""
        document = Document(_REPORT_SCHEMA.expect(data))
        return EnergyReport(
            name=document.assertGet("name", str),
            regime=document.assertGet("regime", str),
            items=dict(document.assertGet("items", dict)),
            eTot=document.assertNumber("e_tot_joules"),
            powerWatts=document.optionalNumber("power_watts"),
            durationSeconds=document.optionalNumber("duration_seconds"),
            advisories=list(document.ensure("advisories", list, [])),
            metrics=dict(document.ensure("metrics", dict, {})),
            inputs=dict(document.ensure("inputs", dict, {})),
        )


_REPORT_SCHEMA = Object({
    "name": String(),
    "regime": String().enum("nisq", "ftqc"),
    "items": Mapping(Number()).min(1),
    "e_tot_joules": Number(),
    "power_watts": Number().optional(),
    "duration_seconds": Number().optional(),
    "dominant_term": String().optional(),
    "advisories": Array(String()).default([]),
    "metrics": Object().withAdditionalProperties().default({}),
    "inputs": Object().withAdditionalProperties().default({}),
})


class ReportFormat(Enum):
    TABLE = "table"
    MACHINE = "machine"


def _kilojoules(joules: float) -> str:
    return f"{joules / 1e3:,.0f}"


def _nisqTable(report: EnergyReport) -> List[str]:
    gates: Dict[str, int] = report.metrics.get("fold_gate_totals", {})
    lines = [f"{'fold':<18}{'gates with PT':>16}{'energy (kJ)':>18}"]
    for key, joules in report.items.items():
        if key.startswith("fold_"):
            fold = key[len("fold_"):]
            lines.append(f"{fold:<18}{gates.get(fold, 0):>16,}{_kilojoules(joules):>18}")
    lines.append(f"{'m3 calibration':<34}{_kilojoules(report.items.get('m3_calibration', 0.0)):>18}")
    return lines


def _ftqcTable(report: EnergyReport) -> List[str]:
    metrics = report.metrics
    lines = [
        f"d={metrics.get('d')}  patches={metrics.get('n_patches')}  "
        f"physical qubits={metrics.get('physical_qubits')}  "
        f"stall x{metrics.get('stall_factor', 1.0):.3g}",
        f"{'lattice':<10}{'V_ls * E_cyc':<18}{humanizeJoules(report.items['lattice']):>16}",
        f"{'magic':<10}{'N_T * E_ms':<18}{humanizeJoules(report.items['magic']):>16}",
        f"{'decoder':<10}{'E_dec':<18}{humanizeJoules(report.items['decoder']):>16}",
    ]
    factory = metrics.get("factory", {})
    if factory.get("cost_is_default"):
        lines.append(f"(E_ms uses the default {factory.get('protocol')} {factory.get('cost_mode')} constant)")
    return lines


def _table(report: EnergyReport) -> str:
    lines = [f"workload: {report.name} ({report.regime})"]
    lines.extend(_nisqTable(report) if report.regime == "nisq" else _ftqcTable(report))
    lines.append(f"{'exec energy (kJ)':<34}{_kilojoules(report.execJoules):>18}")
    lines.append(f"{'system (kJ)':<34}{_kilojoules(report.items.get('system', 0.0)):>18}")
    lines.append(f"{'classical (kJ)':<34}{_kilojoules(report.items.get('classical', 0.0)):>18}")
    lines.append(f"{'Total Energy (kJ)':<34}{_kilojoules(report.eTot):>18}")
    lines.append(f"{'total':<34}{humanizeJoules(report.eTot):>18}")
    if report.durationSeconds is not None:
        lines.append(f"{'duration':<34}{_humanizeSeconds(report.durationSeconds):>18}")
    if report.powerWatts is not None:
        lines.append(f"{'Power (MW)':<34}{report.powerWatts / 1e6:>18.3f}")
    lines.append(f"{'dominant term':<34}{report.dominantTerm():>18}")
    for advisory in report.advisories:
        lines.append(f"note: {advisory}")
    return "\n".join(lines) + "\n"


def renderReport(report: EnergyReport, fmt: ReportFormat = ReportFormat.TABLE) -> str:
    """human table (kJ, one row per fold for NISQ) or the json machine format"""
    if fmt is ReportFormat.MACHINE:
        return Document(report.toDict()).toString()
    return _table(report)


def parseReport(text: str) -> EnergyReport:
    """inverse of the machine rendering"""
    document = Document.fromString(text)
    try:
        return EnergyReport.fromDict(document.toDict())
    except ValidationError as exc:
        raise ValidationError(f"not a qjoules report: {exc.message}", exc.path, exc.validation) from exc

# -*- coding: utf-8 -*-
"""technology profiles and the decoder hardware table"""

from __future__ import annotations

__copyright__ = "Copyright (c) 2026 qjoules contributors"

import csv
import io
import logging
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from qjoules.document import Document, readText
from qjoules.errors import InfeasibleError, ValidationError
from qjoules.schema import Boolean, Mapping as MappingOf, Number, Object, String
from qjoules.types import JObject

__all__ = [
    "GATE_CLASSES",
    "Platform",
    "TechnologyProfile",
    "Catalog",
    "builtinProfiles",
    "profileFromDocument",
    "DecoderKind",
    "DecoderEntry",
    "Interpolation",
    "DecoderTable",
    "builtinDecoderTable",
    "decoderLookup",
    "loadDecoderTable",
    "DEFAULT_DECODE_BUDGET",
]

logger = logging.getLogger(__name__)

GATE_CLASSES = ("1q", "2q", "measure", "reset", "other")

# syndrome round budget of superconducting devices
DEFAULT_DECODE_BUDGET = 400e-9
# slowest syndrome round a superconducting device can wait for
MAX_SUPERCONDUCTING_DECODE_BUDGET = 1e-3


class Platform(Enum):
    """device family a profile belongs to"""

    SUPERCONDUCTING = "superconducting"
    TRAPPED_ION = "trapped_ion"
    OTHER = "other"


@dataclass(frozen=True)
class TechnologyProfile:
    """per-technology energies and timings"""

    key: str
    gateEnergy: Mapping[str, float]
    gateNameToClass: Mapping[str, str]
    maintenancePowerWatts: float
    cycleTimeSeconds: float
    decodeBudgetSeconds: float = DEFAULT_DECODE_BUDGET
    coolingIncludedInGateEnergy: bool = False
    maintenanceWattsPerQubit: float = 0.0
    gateDurationSeconds: Optional[Mapping[str, float]] = None
    description: str = ""
    platform: Platform = Platform.OTHER

    def __post_init__(self) -> None:
        for gateClass, energy in self.gateEnergy.items():
            if gateClass not in GATE_CLASSES:
                raise ValidationError(f"unknown gate class {gateClass}", ["gate_energy"], "enum")
            if energy < 0:
                raise ValidationError(
                    f"gate energy must be >= 0, got {energy}", ["gate_energy", gateClass], "min"
                )
        for name, gateClass in self.gateNameToClass.items():
            if gateClass not in GATE_CLASSES:
                raise ValidationError(
                    f"unknown gate class {gateClass}", ["gate_name_to_class", name], "enum"
                )
        if self.maintenancePowerWatts < 0 or self.maintenanceWattsPerQubit < 0:
            raise ValidationError("maintenance power must be >= 0", ["maintenance_power_watts"], "min")
        if self.cycleTimeSeconds <= 0:
            raise ValidationError("cycle time must be > 0", ["cycle_time_seconds"], "min")
        if self.decodeBudgetSeconds <= 0:
            raise ValidationError("decode budget must be > 0", ["decode_budget_seconds"], "min")
        if (
            self.platform is Platform.SUPERCONDUCTING
            and self.decodeBudgetSeconds > MAX_SUPERCONDUCTING_DECODE_BUDGET
        ):
            raise ValidationError(
                "decode budget of a superconducting profile must be <= "
                f"{MAX_SUPERCONDUCTING_DECODE_BUDGET:g} s, got {self.decodeBudgetSeconds:g}",
                ["decode_budget_seconds"],
                "max",
            )

    def classOf(self, gateName: str) -> str:
        """energy class of a gate name; unmapped names fall into 'other'"""
        return self.gateNameToClass.get(gateName, "other")

    def energyOfClass(self, gateClass: str) -> float:
        """E_g of a class, InfeasibleError when the profile has none"""
        try:
            return self.gateEnergy[gateClass]
        except KeyError:
            raise InfeasibleError(
                f"profile {self.key} defines no energy for gate class {gateClass!r}"
            ) from None

    def energyOf(self, gateName: str) -> float:
        """E_g of a gate name"""
        return self.energyOfClass(self.classOf(gateName))

    def toDict(self) -> JObject:
        """profile file representation"""
        data: JObject = {
            "key": self.key,
            "description": self.description,
            "platform": self.platform.value,
            "gate_energy": dict(self.gateEnergy),
            "gate_name_to_class": dict(self.gateNameToClass),
            "maintenance_power_watts": self.maintenancePowerWatts,
            "maintenance_watts_per_qubit": self.maintenanceWattsPerQubit,
            "cycle_time_seconds": self.cycleTimeSeconds,
            "decode_budget_seconds": self.decodeBudgetSeconds,
            "cooling_included_in_gate_energy": self.coolingIncludedInGateEnergy,
        }
        if self.gateDurationSeconds is not None:
            data["gate_duration_seconds"] = dict(self.gateDurationSeconds)
        return data


def _classMap(classes: Mapping[str, Iterable[str]]) -> Dict[str, str]:
    return {name: gateClass for gateClass, names in classes.items() for name in names}


def _uniform(energy: float) -> Dict[str, float]:
    return {gateClass: energy for gateClass in GATE_CLASSES}


_SUPERCONDUCTING_GATES = _classMap({
    "1q": ("id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "sx", "sxdg",
           "rx", "ry", "rz", "p", "u", "U", "u1", "u2", "u3", "delay"),
    "2q": ("cx", "CX", "cz", "ecr", "cy", "ch", "swap", "crx", "cry", "crz",
           "cp", "cu1", "cu3", "rxx", "ryy", "rzz"),
    "measure": ("measure",),
    "reset": ("reset",),
})

_TRAPPED_ION_GATES = _classMap({
    "1q": ("id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "sx", "rx", "ry",
           "rz", "p", "u", "u1", "u2", "u3", "gpi", "gpi2", "delay"),
    "2q": ("ms", "zz", "rxx", "ryy", "rzz", "cx", "CX", "cz", "swap"),
    "measure": ("measure",),
    "reset": ("reset",),
})


def builtinProfiles() -> Dict[str, TechnologyProfile]:
    """
    the reserved profiles

    published per-gate energies already fold in operation and cooling
    overhead; they are applied uniformly to every operation class
    """
    return {
        "superconducting": TechnologyProfile(
            key="superconducting",
            description="transmon device, 0.18 J per operation incl. cooling",
            gateEnergy=_uniform(0.18),
            gateNameToClass=_SUPERCONDUCTING_GATES,
            maintenancePowerWatts=25e3,
            cycleTimeSeconds=1e-6,
            decodeBudgetSeconds=DEFAULT_DECODE_BUDGET,
            coolingIncludedInGateEnergy=True,
            platform=Platform.SUPERCONDUCTING,
        ),
        "trapped_ion": TechnologyProfile(
            key="trapped_ion",
            description="trapped-ion device, 15 J per operation incl. cooling; "
            "no published maintenance or cycle figures (placeholders)",
            gateEnergy=_uniform(15.0),
            gateNameToClass=_TRAPPED_ION_GATES,
            maintenancePowerWatts=0.0,
            cycleTimeSeconds=1e-4,
            decodeBudgetSeconds=1e-4,
            coolingIncludedInGateEnergy=True,
            platform=Platform.TRAPPED_ION,
        ),
    }


_PROFILE_SCHEMA = Object({
    "key": String().nonEmpty(),
    "description": String().default(""),
    "platform": String().enum(*(p.value for p in Platform)).default(Platform.OTHER.value),
    "gate_energy": MappingOf(Number().nonNegative(), String().enum(*GATE_CLASSES)),
    "gate_name_to_class": MappingOf(String().enum(*GATE_CLASSES)).default({}),
    "maintenance_power_watts": Number().nonNegative(),
    "maintenance_watts_per_qubit": Number().nonNegative().default(0.0),
    "cycle_time_seconds": Number().positive(),
    "decode_budget_seconds": Number().positive().default(DEFAULT_DECODE_BUDGET),
    "cooling_included_in_gate_energy": Boolean().default(False),
    "gate_duration_seconds": MappingOf(Number().positive(), String().enum(*GATE_CLASSES)).optional(),
})


def profileFromDocument(document: Document) -> TechnologyProfile:
    """validates a profile file"""
    data = Document(_PROFILE_SCHEMA.expect(document.toDict()))
    return TechnologyProfile(
        key=data.assertGet("key", str),
        description=data.ensure("description", str, ""),
        platform=Platform(data.ensure("platform", str, Platform.OTHER.value)),
        gateEnergy=data.assertGet("gate_energy", dict),
        gateNameToClass=data.ensure("gate_name_to_class", dict, {}),
        maintenancePowerWatts=data.assertNumber("maintenance_power_watts"),
        maintenanceWattsPerQubit=data.optionalNumber("maintenance_watts_per_qubit") or 0.0,
        cycleTimeSeconds=data.assertNumber("cycle_time_seconds"),
        decodeBudgetSeconds=data.optionalNumber("decode_budget_seconds") or DEFAULT_DECODE_BUDGET,
        coolingIncludedInGateEnergy=data.ensure("cooling_included_in_gate_energy", bool, False),
        gateDurationSeconds=data.optionalGet("gate_duration_seconds", dict),
    )


class Catalog:
    """builtin profiles plus the ones loaded from profile files"""

    __slots__ = ("_profiles", "_builtin")

    def __init__(self) -> None:
        self._profiles = builtinProfiles()
        self._builtin = frozenset(self._profiles)

    def keys(self) -> List[str]:
        """profile keys, builtin first"""
        return list(self._profiles)

    def isBuiltin(self, key: str) -> bool:
        """is the key reserved?"""
        return key in self._builtin

    def register(self, profile: TechnologyProfile) -> None:
        """adds a profile; builtin keys are reserved"""
        if profile.key in self._builtin:
            raise ValidationError(f"profile key {profile.key!r} is reserved", ["key"], "reserved")
        if profile.key in self._profiles:
            raise ValidationError(f"profile key {profile.key!r} defined twice", ["key"], "unique")
        self._profiles[profile.key] = profile
        logger.debug("registered profile %s", profile.key)

    def loadProfileFile(self, path: str) -> TechnologyProfile:
        """reads, validates and registers a profile file"""
        profile = profileFromDocument(Document.fromFile(path))
        self.register(profile)
        return profile

    def resolve(self, key: str) -> TechnologyProfile:
        """the profile for a workload's technology key"""
        try:
            return self._profiles[key]
        except KeyError:
            raise ValidationError(
                f"unknown technology {key!r} (known: {', '.join(self._profiles)})",
                ["technology"],
                "enum",
            ) from None


class DecoderKind(Enum):
    """hardware decoder families"""

    BPOSD = "BPOSD"
    MWPM = "MWPM"


@dataclass(frozen=True)
class DecoderEntry:
    """metrics of one decoder instance serving one logical qubit"""

    decoder: DecoderKind
    distance: int
    areaMm2: float
    powerWatts: float
    latencySeconds: float

    def __post_init__(self) -> None:
        if self.distance < 1:
            raise ValidationError(f"distance must be >= 1, got {self.distance}", ["d"], "min")
        for name, value in (("area_mm2", self.areaMm2), ("power_watts", self.powerWatts),
                            ("latency", self.latencySeconds)):
            if not value > 0:
                raise ValidationError(f"{name} must be > 0, got {value}", [name], "min")

    def toDict(self) -> JObject:
        """report representation"""
        return {
            "decoder": self.decoder.value,
            "d": self.distance,
            "area_mm2": self.areaMm2,
            "power_watts": self.powerWatts,
            "latency_seconds": self.latencySeconds,
        }


class Interpolation(Enum):
    """lookup policy for distances the table does not list"""

    EXACT_ONLY = "exact_only"
    PIECEWISE_LINEAR = "piecewise_linear"


@dataclass(frozen=True)
class DecoderTable:
    """decoder metrics by (decoder, distance)"""

    entries: Tuple[DecoderEntry, ...]
    interpolation: Interpolation = Interpolation.PIECEWISE_LINEAR
    rows: Dict[DecoderKind, Tuple[DecoderEntry, ...]] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        rows: Dict[DecoderKind, List[DecoderEntry]] = {}
        for entry in self.entries:
            rows.setdefault(entry.decoder, []).append(entry)
        for kind, entries in rows.items():
            entries.sort(key=lambda e: e.distance)
            distances = [e.distance for e in entries]
            if len(set(distances)) != len(distances):
                raise ValidationError(
                    f"{kind.value} lists a distance twice: {distances}", ["d"], "unique"
                )
        object.__setattr__(self, "rows", {kind: tuple(e) for kind, e in rows.items()})

    def withInterpolation(self, interpolation: Interpolation) -> DecoderTable:
        """same entries, other lookup policy"""
        return DecoderTable(self.entries, interpolation)


def builtinDecoderTable() -> DecoderTable:
    """averaged hardware metrics of BPOSD and MWPM decoders per logical qubit"""
    b, m = DecoderKind.BPOSD, DecoderKind.MWPM
    return DecoderTable((
        DecoderEntry(b, 7, 0.90, 0.27, 19.6e-9),
        DecoderEntry(b, 11, 1.62, 0.28, 26.6e-9),
        DecoderEntry(b, 13, 4.35, 0.36, 32.8e-9),
        DecoderEntry(b, 32, 57.45, 2.49, 145.0e-9),
        DecoderEntry(m, 7, 0.38, 0.19, 14.4e-9),
        DecoderEntry(m, 11, 1.76, 0.92, 35.5e-9),
        DecoderEntry(m, 13, 3.10, 1.62, 49.6e-9),
        DecoderEntry(m, 32, 59.09, 30.33, 300.5e-9),
    ))


def decoderLookup(table: DecoderTable, decoder: DecoderKind, d: int) -> DecoderEntry:
    """
    metrics at distance d

    tabulated distances are returned verbatim; between two tabulated
    distances each metric is interpolated linearly (piecewise_linear policy).
    distances outside the table are refused
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ValidationError(f"distance must be a positive integer, got {d!r}", ["d"], "min")
    rows = table.rows.get(decoder)
    if not rows:
        raise InfeasibleError(f"the decoder table has no {decoder.value} entries")

    for entry in rows:
        if entry.distance == d:
            return entry

    lowest, highest = rows[0].distance, rows[-1].distance
    if d < lowest:
        raise InfeasibleError(
            f"{decoder.value} d={d} is below the table range ({lowest}..{highest})"
        )
    if d > highest:
        raise InfeasibleError(
            f"{decoder.value} d={d} is above the table range ({lowest}..{highest}): "
            "extrapolation refused"
        )
    if table.interpolation is Interpolation.EXACT_ONLY:
        raise InfeasibleError(f"{decoder.value} d={d} is not tabulated (exact_only)")

    distances = np.array([e.distance for e in rows], dtype=float)

    def interp(values: Iterable[float]) -> float:
        return float(np.interp(d, distances, np.fromiter(values, dtype=float)))

    entry = DecoderEntry(
        decoder,
        d,
        interp(e.areaMm2 for e in rows),
        interp(e.powerWatts for e in rows),
        interp(e.latencySeconds for e in rows),
    )
    logger.debug("interpolated %s", entry)
    return entry


def _nanoseconds(text: str) -> float:
    # decimal scaling keeps "26.6" ns identical to the literal 26.6e-9
    return float(Decimal(text).scaleb(-9))


def loadDecoderTable(
    path: str, interpolation: Interpolation = Interpolation.PIECEWISE_LINEAR
) -> DecoderTable:
    """
    reads rows ``decoder,d,area_mm2,power_watts,latency_ns``

    a leading header row is skipped
    """
    entries: List[DecoderEntry] = []
    reader = csv.reader(io.StringIO(readText(path)))
    for number, row in enumerate(reader, start=1):
        cells = [cell.strip() for cell in row]
        if not cells or not any(cells) or cells[0].startswith("#"):
            continue
        if number == 1 and cells[0].lower() == "decoder":
            continue
        if len(cells) != 5:
            raise ValidationError(f"{path}:{number}: expected 5 columns, got {len(cells)}", [], "csv")
        try:
            entries.append(DecoderEntry(
                DecoderKind(cells[0].upper()),
                int(cells[1]),
                float(cells[2]),
                float(cells[3]),
                _nanoseconds(cells[4]),
            ))
        except (ValueError, InvalidOperation) as exc:
            raise ValidationError(f"{path}:{number}: {exc}", [], "csv") from exc
    if not entries:
        raise ValidationError(f"{path}: no decoder rows", [], "csv")
    return DecoderTable(tuple(entries), interpolation)

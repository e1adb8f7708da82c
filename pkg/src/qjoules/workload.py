# -*- coding: utf-8 -*-
"""
the workload file: one json document describing a quantum job

{name, regime, technology, qpu_seconds?, nisq? | ftqc?, classical?}
"""

from __future__ import annotations

__copyright__ = "Copyright (c) 2026 qjoules contributors"

import logging
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, List, Mapping, Optional, Tuple, TypeVar

from qjoules.circuit import GateCounts, UnknownGatePolicy, countGatesCircuitText
from qjoules.document import Document, readText
from qjoules.errors import ValidationError
from qjoules.ftqc import (
    CodeParams,
    CostMode,
    FactoryProtocol,
    FactorySpec,
    FtqcConfig,
    LogicalCircuit,
)
from qjoules.hardware import DecoderKind
from qjoules.nisq import VqeSpec
from qjoules.overhead import (
    ClassicalOverheadSpec,
    PowerSeries,
    PueProfile,
    loadPowerSeries,
)
from qjoules.qem import FoldMode, QemStack
from qjoules.schema import Array, Integer, Mapping as MappingOf, Number, Object, String
from qjoules.types import JObject

__all__ = [
    "Regime",
    "NisqWorkload",
    "ClassicalSection",
    "WorkloadSpec",
    "VqeSpec",
    "LogicalCircuit",
    "parseWorkload",
    "parseWorkloadObject",
    "loadWorkload",
    "renderWorkload",
    "workloadToDict",
]

logger = logging.getLogger(__name__)

T = TypeVar("T")


class Regime(Enum):
    NISQ = "nisq"
    FTQC = "ftqc"


@dataclass(frozen=True)
class NisqWorkload:
    """
    the base circuit (counts, circuit text or a VQE description) and its QEM stack

    circuitFile is kept as written and resolved against the workload directory
    """

    gateCounts: Optional[GateCounts] = None
    circuitFile: Optional[str] = None
    unknownGatePolicy: UnknownGatePolicy = UnknownGatePolicy.ERROR
    ddInsertions: Mapping[str, int] = field(default_factory=dict)
    vqe: Optional[VqeSpec] = None
    qem: Optional[QemStack] = None

    def __post_init__(self) -> None:
        sources = [s for s in (self.gateCounts, self.circuitFile, self.vqe) if s is not None]
        if len(sources) != 1:
            raise ValidationError(
                "expected exactly one of gate_counts, circuit_file or vqe", ["nisq"], "oneOf"
            )
        if self.vqe is None and self.qem is None:
            raise ValidationError("expected qem to be present", ["nisq", "qem"], "required")
        if self.vqe is not None and self.qem is not None and self.qem.m3CalShots:
            raise ValidationError(
                "m3 calibration needs a measured register; vqe workloads carry no qubit count",
                ["nisq", "qem", "m3_cal_shots"],
                "unsupported",
            )
        for name, count in self.ddInsertions.items():
            if count < 0:
                raise ValidationError("insertions must be >= 0", ["nisq", "dd_insertions", name], "min")

    def baseCounts(self, baseDir: str = ".") -> GateCounts:
        """the counted circuit plus dynamical-decoupling insertions"""
        if self.gateCounts is not None:
            counts = self.gateCounts
        elif self.circuitFile is not None:
            path = os.path.join(baseDir, self.circuitFile)
            counts = countGatesCircuitText(readText(path), self.unknownGatePolicy)
        else:
            raise ValidationError("a vqe workload has no gate counts", ["nisq", "vqe"], "type")
        if self.ddInsertions:
            counts = counts.merged(self.ddInsertions)
        return counts


@dataclass(frozen=True)
class ClassicalSection:
    """inline overhead inputs plus an optional counter file"""

    spec: ClassicalOverheadSpec = field(default_factory=ClassicalOverheadSpec)
    itSeriesFile: Optional[str] = None

    def resolve(self, baseDir: str = ".") -> ClassicalOverheadSpec:
        if self.itSeriesFile is None:
            return self.spec
        loaded = loadPowerSeries(os.path.join(baseDir, self.itSeriesFile))
        return ClassicalOverheadSpec(
            self.spec.itSeries + tuple(loaded),
            self.spec.pue,
            self.spec.sharedJoules,
            self.spec.netWanJoules,
            self.spec.storageJoules,
        )


@dataclass(frozen=True)
class WorkloadSpec:
    name: str
    regime: Regime
    technology: str
    qpuSeconds: Optional[float] = None
    nisq: Optional[NisqWorkload] = None
    ftqc: Optional[FtqcConfig] = None
    classical: Optional[ClassicalSection] = None

    def __post_init__(self) -> None:
        _checkPayload(self.regime, self.nisq is not None, self.ftqc is not None)
        if self.qpuSeconds is not None and not self.qpuSeconds > 0:
            raise ValidationError("qpu_seconds must be > 0", ["qpu_seconds"], "min")


def _checkPayload(regime: Regime, hasNisq: bool, hasFtqc: bool) -> None:
    expected = (regime is Regime.NISQ, regime is Regime.FTQC)
    if (hasNisq, hasFtqc) != expected:
        present = [name for name, has in (("nisq", hasNisq), ("ftqc", hasFtqc)) if has]
        raise ValidationError(
            f"regime/payload mismatch: regime is {regime.value}, "
            f"payload is {', '.join(present) or 'missing'}",
            ["regime"],
            "mismatch",
        )


def _pairs() -> Array:
    return Array(Array(Number()).min(2).max(2))


_WORKLOAD_SCHEMA = Object({
    "name": String().nonEmpty(),
    "regime": String().enum("nisq", "ftqc"),
    "technology": String().nonEmpty(),
    "qpu_seconds": Number().positive().optional(),
    "nisq": Object({
        "gate_counts": Object({
            "counts": MappingOf(Integer().nonNegative()),
            "qubit_count": Integer().nonNegative(),
            "depth": Integer().nonNegative().default(0),
        }).optional(),
        "circuit_file": String().nonEmpty().optional(),
        "unknown_gate_policy": String().enum("error", "count_as_other").default("error"),
        "dd_insertions": MappingOf(Integer().nonNegative()).default({}),
        "vqe": Object({
            "ansatz_two_qubit_gates": Integer().positive(),
            "pauli_groups": Integer().positive(),
            "shots_per_circuit": Integer().positive(),
            "iterations": Integer().nonNegative(),
        }).optional(),
        "qem": Object({
            "zne_folds": Array(Integer().positive().odd()).min(1).strictlyIncreasing(),
            "pt_copies": Integer().positive(),
            "shots": Integer().positive(),
            "fold_mode": String().enum("global", "partial", "measured").default("global"),
            "folded_gate_count": Integer().nonNegative().optional(),
            "measured_fold_counts": MappingOf(
                Integer().nonNegative(), String().regex(r"^[1-9][0-9]*$")
            ).optional(),
            "m3_cal_shots": Integer().nonNegative().default(0),
            "m3_amortize_over": Integer().positive().default(1),
        }).optional(),
    }).optional(),
    "ftqc": Object({
        "logical": Object({
            "logical_qubits": Integer().positive(),
            "t_count": Integer().nonNegative(),
            "clifford_count": Integer().nonNegative(),
            "logical_depth": Integer().positive(),
            "spacetime_volume": Number().positive().optional(),
        }),
        "code": Object({
            "p": Number().probability(),
            "p_th": Number().probability().default(0.01),
            "target_pl": Number().probability(),
            "prefactor_a": Number().positive().default(1.0),
            "d": Integer().positive().odd().optional(),
            "margin_steps": Integer().nonNegative().default(0),
        }),
        "factory": Object({
            "protocol": String().enum("distillation", "cultivation"),
            "cost_mode": String().enum("ratio", "patch_cycles").default("ratio"),
            "d_f": Integer().min(3).odd().default(15),
            "patch_cycles_per_t": Number().positive().optional(),
            "ratio_to_cycle": Number().positive().optional(),
            "output_error": Number().positive().optional(),
        }),
        "decoder": String().enum("BPOSD", "MWPM"),
        "rho": Number().nonNegative().default(0.5),
        "cycle_energy_override": Number().nonNegative().optional(),
    }).optional(),
    "classical": Object({
        "it_series": Array(Object({
            "label": String().nonEmpty(),
            "samples": _pairs().min(1),
        })).default([]),
        "it_series_file": String().nonEmpty().optional(),
        "pue": _pairs().min(1).default([[0, 1.0]]),
        "shared_joules": Number().nonNegative().default(0.0),
        "net_wan_joules": Number().nonNegative().default(0.0),
        "storage_joules": Number().nonNegative().default(0.0),
    }).optional(),
})


def _pairTuple(rows: List[List[float]]) -> Tuple[Tuple[float, float], ...]:
    return tuple((row[0], row[1]) for row in rows)


def _gateCounts(data: Document) -> GateCounts:
    return GateCounts(
        dict(data.assertGet("counts", dict)),
        data.assertGet("qubit_count", int),
        data.ensure("depth", int, 0),
    )


def _qemStack(data: Document) -> QemStack:
    measured = data.optionalGet("measured_fold_counts", dict)
    return QemStack(
        zneFolds=tuple(data.assertGet("zne_folds", list)),
        ptCopies=data.assertGet("pt_copies", int),
        shots=data.assertGet("shots", int),
        foldMode=FoldMode(data.ensure("fold_mode", str, "global")),
        foldedGateCount=data.optionalGet("folded_gate_count", int),
        measuredFoldCounts={int(k): v for k, v in measured.items()} if measured is not None else None,
        m3CalShots=data.ensure("m3_cal_shots", int, 0),
        m3AmortizeOver=data.ensure("m3_amortize_over", int, 1),
    )


def _nisqWorkload(data: Document) -> NisqWorkload:
    counts = data.section("gate_counts")
    vqe = data.section("vqe")
    qem = data.section("qem")
    return NisqWorkload(
        gateCounts=_gateCounts(counts) if counts is not None else None,
        circuitFile=data.optionalGet("circuit_file", str),
        unknownGatePolicy=UnknownGatePolicy(data.ensure("unknown_gate_policy", str, "error")),
        ddInsertions=dict(data.ensure("dd_insertions", dict, {})),
        vqe=VqeSpec(
            vqe.assertGet("ansatz_two_qubit_gates", int),
            vqe.assertGet("pauli_groups", int),
            vqe.assertGet("shots_per_circuit", int),
            vqe.assertGet("iterations", int),
        ) if vqe is not None else None,
        qem=_qemStack(qem) if qem is not None else None,
    )


def _ftqcConfig(data: Document) -> FtqcConfig:
    logical = data.section("logical")
    code = data.section("code")
    factory = data.section("factory")
    assert logical is not None and code is not None and factory is not None
    return FtqcConfig(
        logical=LogicalCircuit(
            logical.assertGet("logical_qubits", int),
            logical.assertGet("t_count", int),
            logical.assertGet("clifford_count", int),
            logical.assertGet("logical_depth", int),
            logical.optionalNumber("spacetime_volume"),
        ),
        code=CodeParams(
            p=code.assertNumber("p"),
            targetPl=code.assertNumber("target_pl"),
            pTh=code.assertNumber("p_th"),
            prefactorA=code.assertNumber("prefactor_a"),
            d=code.optionalGet("d", int),
            marginSteps=code.ensure("margin_steps", int, 0),
        ),
        factory=FactorySpec(
            protocol=FactoryProtocol(factory.assertGet("protocol", str)),
            distance=factory.ensure("d_f", int, 15),
            costMode=CostMode(factory.ensure("cost_mode", str, "ratio")),
            patchCyclesPerT=factory.optionalNumber("patch_cycles_per_t"),
            ratioToCycle=factory.optionalNumber("ratio_to_cycle"),
            outputError=factory.optionalNumber("output_error"),
        ),
        decoder=DecoderKind(data.assertGet("decoder", str)),
        rho=data.assertNumber("rho"),
        cycleEnergyOverride=data.optionalNumber("cycle_energy_override"),
    )


def _classicalSection(data: Document) -> ClassicalSection:
    series = tuple(
        PowerSeries(entry["label"], _pairTuple(entry["samples"]))
        for entry in data.ensure("it_series", list, [])
    )
    spec = ClassicalOverheadSpec(
        itSeries=series,
        pue=PueProfile(_pairTuple(data.ensure("pue", list, [[0, 1.0]]))),
        sharedJoules=data.assertNumber("shared_joules"),
        netWanJoules=data.assertNumber("net_wan_joules"),
        storageJoules=data.assertNumber("storage_joules"),
    )
    return ClassicalSection(spec, data.optionalGet("it_series_file", str))


def _build(data: Document, key: str, builder: Callable[[Document], T]) -> Optional[T]:
    """builds a section; value errors raised below it get the section prefix"""
    section = data.section(key)
    if section is None:
        return None
    try:
        return builder(section)
    except ValidationError as exc:
        if exc.path[:1] == [key]:
            raise
        raise ValidationError.inherit(exc, [key]) from exc


def parseWorkloadObject(raw: JObject) -> WorkloadSpec:
    """validates a decoded workload document"""
    data = Document(_WORKLOAD_SCHEMA.expect(raw))
    regime = Regime(data.assertGet("regime", str))
    _checkPayload(regime, data.section("nisq") is not None, data.section("ftqc") is not None)

    spec = WorkloadSpec(
        name=data.assertGet("name", str),
        regime=regime,
        technology=data.assertGet("technology", str),
        qpuSeconds=data.optionalNumber("qpu_seconds"),
        nisq=_build(data, "nisq", _nisqWorkload),
        ftqc=_build(data, "ftqc", _ftqcConfig),
        classical=_build(data, "classical", _classicalSection),
    )
    logger.debug("parsed workload %s (%s)", spec.name, spec.regime.value)
    return spec


def parseWorkload(text: str) -> WorkloadSpec:
    """
    parses and validates a workload document

    syntax errors carry line and column; schema errors carry the field path
    """
    return parseWorkloadObject(Document.fromString(text).toDict())


def loadWorkload(path: str) -> WorkloadSpec:
    """reads a workload file"""
    return parseWorkload(readText(path))


def _gateCountsDict(counts: GateCounts) -> JObject:
    return {"counts": dict(counts.counts), "qubit_count": counts.qubitCount, "depth": counts.depth}


def _qemDict(qem: QemStack) -> JObject:
    data: JObject = {
        "zne_folds": list(qem.zneFolds),
        "pt_copies": qem.ptCopies,
        "shots": qem.shots,
        "fold_mode": qem.foldMode.value,
    }
    if qem.foldedGateCount is not None:
        data["folded_gate_count"] = qem.foldedGateCount
    if qem.measuredFoldCounts is not None:
        data["measured_fold_counts"] = {str(a): n for a, n in qem.measuredFoldCounts.items()}
    data["m3_cal_shots"] = qem.m3CalShots
    data["m3_amortize_over"] = qem.m3AmortizeOver
    return data


def _nisqDict(nisq: NisqWorkload) -> JObject:
    data: JObject = {}
    if nisq.gateCounts is not None:
        data["gate_counts"] = _gateCountsDict(nisq.gateCounts)
    if nisq.circuitFile is not None:
        data["circuit_file"] = nisq.circuitFile
        data["unknown_gate_policy"] = nisq.unknownGatePolicy.value
    if nisq.vqe is not None:
        data["vqe"] = {
            "ansatz_two_qubit_gates": nisq.vqe.ansatzTwoQubitGates,
            "pauli_groups": nisq.vqe.pauliGroups,
            "shots_per_circuit": nisq.vqe.shotsPerCircuit,
            "iterations": nisq.vqe.iterations,
        }
    if nisq.ddInsertions:
        data["dd_insertions"] = dict(nisq.ddInsertions)
    if nisq.qem is not None:
        data["qem"] = _qemDict(nisq.qem)
    return data


def _optional(data: JObject, key: str, value: Any) -> None:
    if value is not None:
        data[key] = value


def _ftqcDict(config: FtqcConfig) -> JObject:
    logical: JObject = {
        "logical_qubits": config.logical.logicalQubits,
        "t_count": config.logical.tCount,
        "clifford_count": config.logical.cliffordCount,
        "logical_depth": config.logical.logicalDepth,
    }
    _optional(logical, "spacetime_volume", config.logical.spacetimeVolumeOverride)

    code: JObject = {
        "p": config.code.p,
        "p_th": config.code.pTh,
        "target_pl": config.code.targetPl,
        "prefactor_a": config.code.prefactorA,
    }
    _optional(code, "d", config.code.d)
    code["margin_steps"] = config.code.marginSteps

    factory: JObject = {
        "protocol": config.factory.protocol.value,
        "cost_mode": config.factory.costMode.value,
        "d_f": config.factory.distance,
    }
    _optional(factory, "patch_cycles_per_t", config.factory.patchCyclesPerT)
    _optional(factory, "ratio_to_cycle", config.factory.ratioToCycle)
    _optional(factory, "output_error", config.factory.outputError)

    data: JObject = {
        "logical": logical,
        "code": code,
        "factory": factory,
        "decoder": config.decoder.value,
        "rho": config.rho,
    }
    _optional(data, "cycle_energy_override", config.cycleEnergyOverride)
    return data


def _classicalDict(section: ClassicalSection) -> JObject:
    spec = section.spec
    data: JObject = {
        "it_series": [
            {"label": s.label, "samples": [list(sample) for sample in s.samples]}
            for s in spec.itSeries
        ],
    }
    _optional(data, "it_series_file", section.itSeriesFile)
    data["pue"] = [list(interval) for interval in spec.pue.intervals]
    data["shared_joules"] = spec.sharedJoules
    data["net_wan_joules"] = spec.netWanJoules
    data["storage_joules"] = spec.storageJoules
    return data


def workloadToDict(spec: WorkloadSpec) -> JObject:
    """the document form of a spec, in canonical key order"""
    data: JObject = {
        "name": spec.name,
        "regime": spec.regime.value,
        "technology": spec.technology,
    }
    _optional(data, "qpu_seconds", spec.qpuSeconds)
    if spec.nisq is not None:
        data["nisq"] = _nisqDict(spec.nisq)
    if spec.ftqc is not None:
        data["ftqc"] = _ftqcDict(spec.ftqc)
    if spec.classical is not None:
        data["classical"] = _classicalDict(spec.classical)
    return data


def renderWorkload(spec: WorkloadSpec) -> str:
    """inverse of parseWorkload"""
    return Document(workloadToDict(spec)).toString()

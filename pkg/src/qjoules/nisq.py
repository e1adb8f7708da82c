# -*- coding: utf-8 -*-
"""NISQ execution energy: gate energy, QEM multipliers, VQE"""

from __future__ import annotations

__copyright__ = "Copyright (c) 2026 qjoules contributors"

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional

from qjoules.circuit import GateCounts
from qjoules.errors import InfeasibleError, ValidationError
from qjoules.hardware import TechnologyProfile
from qjoules.interfaces.common import IBreakdown
from qjoules.qem import QemStack, expandQem
from qjoules.types import JObject

__all__ = [
    "VqeSpec",
    "NisqBreakdown",
    "gateEnergy",
    "effectiveGateEnergy",
    "nisqExecEnergy",
    "m3AmortizedEnergy",
    "vqeEnergy",
    "vqeBreakdown",
    "nisqPower",
    "estimateNisqDuration",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VqeSpec:
    """G two-qubit gates, M pauli groups, S shots per circuit, K iterations"""

    ansatzTwoQubitGates: int
    pauliGroups: int
    shotsPerCircuit: int
    iterations: int

    def __post_init__(self) -> None:
        for name, value in (("ansatz_two_qubit_gates", self.ansatzTwoQubitGates),
                            ("pauli_groups", self.pauliGroups),
                            ("shots_per_circuit", self.shotsPerCircuit)):
            if value < 1:
                raise ValidationError(f"{name} must be >= 1, got {value}", [name], "min")
        if self.iterations < 0:
            raise ValidationError("iterations must be >= 0", ["iterations"], "min")


@dataclass(frozen=True)
class NisqBreakdown(IBreakdown):
    """per-fold energies of a mitigated NISQ workload"""

    perFoldEnergyJoules: Dict[int, float]
    perFoldGateTotals: Dict[int, int]
    baselineShotEnergyJoules: float
    m3CalibrationJoules: float
    shots: int

    @property
    def regime(self) -> str:
        return "nisq"

    @property
    def totalExecJoules(self) -> float:
        return math.fsum(self.perFoldEnergyJoules.values()) + self.m3CalibrationJoules

    @property
    def qemOverheadJoules(self) -> float:
        """what mitigation adds on top of the unmitigated baseline"""
        return self.totalExecJoules - self.baselineShotEnergyJoules - self.m3CalibrationJoules

    def ledger(self) -> Dict[str, float]:
        items = {f"fold_{a}": e for a, e in self.perFoldEnergyJoules.items()}
        items["m3_calibration"] = self.m3CalibrationJoules
        return items

    def metrics(self) -> JObject:
        return {
            "shots": self.shots,
            "fold_gate_totals": {str(a): n for a, n in self.perFoldGateTotals.items()},
            "baseline_joules": self.baselineShotEnergyJoules,
            "qem_overhead_joules": self.qemOverheadJoules,
        }


def gateEnergy(counts: GateCounts, profile: TechnologyProfile) -> float:
    """E_gate = sum_g E_g * N_g"""
    return math.fsum(profile.energyOf(name) * n for name, n in counts.counts.items() if n)


def effectiveGateEnergy(counts: GateCounts, profile: TechnologyProfile) -> float:
    """
    count-weighted energy per gate

    a circuit whose gates all share one class gets that class energy exactly
    """
    classes = {profile.classOf(name) for name, n in counts.counts.items() if n}
    if not classes:
        return 0.0
    if len(classes) == 1:
        return profile.energyOfClass(classes.pop())
    return gateEnergy(counts, profile) / counts.total


def m3AmortizedEnergy(calShots: int, perShotEnergy: float, amortizeOver: int) -> float:
    """calibration shots spread over the evaluations that reuse them"""
    if amortizeOver < 1:
        raise ValidationError(
            f"amortize_over must be >= 1, got {amortizeOver}", ["m3_amortize_over"], "min"
        )
    if calShots == 0:
        return 0.0
    return calShots * perShotEnergy / amortizeOver


def nisqExecEnergy(
    base: GateCounts, qem: QemStack, profile: TechnologyProfile
) -> NisqBreakdown:
    """
    E_NISQ per fold: expanded gate total * S * E_g(effective)

    integer factors are multiplied first so table values stay exact
    """
    energy = effectiveGateEnergy(base, profile)
    expanded = expandQem(base, qem)
    perFold = {a: (total * qem.shots) * energy for a, total in expanded}
    baseline = (base.total * qem.shots) * energy

    calibration = 0.0
    if qem.m3CalShots:
        perShot = base.qubitCount * profile.energyOfClass("measure")
        calibration = m3AmortizedEnergy(qem.m3CalShots, perShot, qem.m3AmortizeOver)

    breakdown = NisqBreakdown(perFold, dict(expanded), baseline, calibration, qem.shots)
    logger.debug(
        "nisq exec: E_g(eff)=%g J, folds=%s, total=%g J", energy, perFold, breakdown.totalExecJoules
    )
    return breakdown


def vqeEnergy(
    spec: VqeSpec, profile: TechnologyProfile, qem: Optional[QemStack] = None
) -> float:
    """G*M*S*K*E_g(2q), times (sum of folds)*P when a QEM stack is given"""
    factor = (
        spec.ansatzTwoQubitGates * spec.pauliGroups * spec.shotsPerCircuit * spec.iterations
    )
    if qem is not None:
        factor *= qem.multiplier
    return factor * profile.energyOfClass("2q")


def vqeBreakdown(
    spec: VqeSpec, profile: TechnologyProfile, qem: Optional[QemStack] = None
) -> NisqBreakdown:
    """vqeEnergy split per fold factor so reports share the NISQ layout"""
    if qem is not None and qem.m3CalShots:
        raise ValidationError(
            "m3 calibration is not modelled for vqe workloads",
            ["qem", "m3_cal_shots"],
            "unsupported",
        )
    energy = profile.energyOfClass("2q")
    perCircuit = spec.ansatzTwoQubitGates * spec.pauliGroups * spec.iterations
    folds = qem.zneFolds if qem is not None else (1,)
    copies = qem.ptCopies if qem is not None else 1
    totals = {a: perCircuit * copies * a for a in folds}
    perFold = {a: (n * spec.shotsPerCircuit) * energy for a, n in totals.items()}
    baseline = (perCircuit * spec.shotsPerCircuit) * energy
    return NisqBreakdown(perFold, totals, baseline, 0.0, spec.shotsPerCircuit)


def nisqPower(totalEnergy: float, qpuSeconds: float) -> float:
    """average power over the measured QPU time"""
    if not qpuSeconds > 0:
        raise ValidationError(
            f"duration must be > 0, got {qpuSeconds}", ["qpu_seconds"], "min"
        )
    return totalEnergy / qpuSeconds


def estimateNisqDuration(
    base: GateCounts, qem: QemStack, profile: TechnologyProfile
) -> float:
    """
    depth * slowest gate duration * shots * P * sum of folds

    coarse; only used when no measured qpu time exists
    """
    if not profile.gateDurationSeconds:
        raise InfeasibleError(f"profile {profile.key} has no gate_duration_seconds")
    if base.depth <= 0:
        raise InfeasibleError("the duration model needs a circuit depth")
    slowest = max(profile.gateDurationSeconds.values())
    return (base.depth * qem.shots * qem.multiplier) * slowest

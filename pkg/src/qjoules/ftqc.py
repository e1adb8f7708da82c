# -*- coding: utf-8 -*-
"""
fault-tolerant execution energy

lattice (V_ls * E_cyc) + magic states (N_T * E_ms) + decoders (E_dec)
"""

from __future__ import annotations

__copyright__ = "Copyright (c) 2026 qjoules contributors"

import logging
import math
import sys
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional

from qjoules.errors import InfeasibleError, ValidationError
from qjoules.hardware import (
    DecoderEntry,
    DecoderKind,
    DecoderTable,
    TechnologyProfile,
    decoderLookup,
)
from qjoules.interfaces.common import IBreakdown
from qjoules.types import JObject

__all__ = [
    "LogicalCircuit",
    "CodeParams",
    "SurfaceLayout",
    "FactoryProtocol",
    "CostMode",
    "FactorySpec",
    "FtqcConfig",
    "FtqcBreakdown",
    "logicalErrorRate",
    "roundingTolerance",
    "solveDistance",
    "physicalQubitsPerLogical",
    "spacetimeVolume",
    "roundEnergy",
    "cycleEnergy",
    "magicStateEnergy",
    "decoderEnergy",
    "backlogStall",
    "ftqcWallTime",
    "ftqcExecEnergy",
]

logger = logging.getLogger(__name__)


def _checkOdd(d: int, name: str = "d", minimum: int = 1) -> None:
    if isinstance(d, bool) or not isinstance(d, int) or d < minimum or d % 2 == 0:
        raise ValidationError(
            f"{name} must be an odd integer >= {minimum}, got {d!r}", [name], "odd"
        )


def _checkProbability(value: float, name: str) -> None:
    if not 0 < value < 1:
        raise ValidationError(f"{name} must be in (0, 1), got {value}", [name], "range")


@dataclass(frozen=True)
class LogicalCircuit:
    """output of logical synthesis and compilation"""

    logicalQubits: int
    tCount: int
    cliffordCount: int
    logicalDepth: int
    spacetimeVolumeOverride: Optional[float] = None

    def __post_init__(self) -> None:
        if self.logicalQubits < 1:
            raise ValidationError("logical_qubits must be >= 1", ["logical_qubits"], "min")
        if self.tCount < 0 or self.cliffordCount < 0:
            raise ValidationError("gate counts must be >= 0", ["t_count"], "min")
        if self.logicalDepth < 1:
            raise ValidationError("logical_depth must be >= 1", ["logical_depth"], "min")
        if self.tCount + self.cliffordCount < 1:
            raise ValidationError(
                "a circuit with depth needs at least one logical gate", ["t_count"], "min"
            )
        override = self.spacetimeVolumeOverride
        if override is not None and override < self.logicalQubits:
            raise ValidationError(
                f"spacetime_volume {override} is below logical_qubits {self.logicalQubits}",
                ["spacetime_volume"],
                "min",
            )


@dataclass(frozen=True)
class CodeParams:
    """surface-code parameters; d is solved from the target when not given"""

    p: float
    targetPl: float
    pTh: float = 0.01
    prefactorA: float = 1.0
    d: Optional[int] = None
    marginSteps: int = 0

    def __post_init__(self) -> None:
        _checkProbability(self.p, "p")
        _checkProbability(self.pTh, "p_th")
        _checkProbability(self.targetPl, "target_pl")
        if not self.prefactorA > 0:
            raise ValidationError("prefactor_a must be > 0", ["prefactor_a"], "min")
        if self.d is not None:
            _checkOdd(self.d)
        if self.marginSteps < 0:
            raise ValidationError("margin_steps must be >= 0", ["margin_steps"], "min")


def physicalQubitsPerLogical(d: int) -> int:
    """d^2 data qubits + d^2 - 1 syndrome ancillas"""
    _checkOdd(d)
    return 2 * d * d - 1


def _patchCount(logical: LogicalCircuit, rho: float) -> int:
    # decimal text of rho, so 0.1 means one tenth
    return math.ceil((1 + Fraction(str(rho))) * logical.logicalQubits)


@dataclass(frozen=True)
class SurfaceLayout:
    """patch grid of a compiled program"""

    d: int
    physicalQubitsPerPatch: int
    nPatches: int
    routingOverheadRho: float

    @staticmethod
    def fromLogical(logical: LogicalCircuit, d: int, rho: float) -> SurfaceLayout:
        """data patches plus ceil(rho * N_L) routing patches"""
        if rho < 0:
            raise ValidationError(f"rho must be >= 0, got {rho}", ["rho"], "min")
        return SurfaceLayout(d, physicalQubitsPerLogical(d), _patchCount(logical, rho), rho)

    @property
    def physicalQubits(self) -> int:
        return self.nPatches * self.physicalQubitsPerPatch


class FactoryProtocol(Enum):
    """magic-state preparation protocol"""

    DISTILLATION = "distillation"
    CULTIVATION = "cultivation"


class CostMode(Enum):
    """how E_ms is derived"""

    RATIO = "ratio"  # E_ms = ratio * E_cyc
    PATCH_CYCLES = "patch_cycles"  # E_ms = patch-cycles per T * E_round(d_f)


# cultivation costs one tenth of distillation in either mode
_DEFAULT_RATIO = {FactoryProtocol.DISTILLATION: 3162.0, FactoryProtocol.CULTIVATION: 3162.0 / 10}
_DEFAULT_PATCH_CYCLES = {FactoryProtocol.DISTILLATION: 810.0, FactoryProtocol.CULTIVATION: 810.0 / 10}
_DEFAULT_OUTPUT_ERROR = {FactoryProtocol.DISTILLATION: 1e-8}


@dataclass(frozen=True)
class FactorySpec:
    """
    magic-state factory

    unset cost constants take the protocol defaults; reports label them as such
    """

    protocol: FactoryProtocol = FactoryProtocol.DISTILLATION
    distance: int = 15
    costMode: CostMode = CostMode.RATIO
    patchCyclesPerT: Optional[float] = None
    ratioToCycle: Optional[float] = None
    outputError: Optional[float] = None

    def __post_init__(self) -> None:
        _checkOdd(self.distance, "d_f", 3)
        for name, value in (("patch_cycles_per_t", self.patchCyclesPerT),
                            ("ratio_to_cycle", self.ratioToCycle),
                            ("output_error", self.outputError)):
            if value is not None and not value > 0:
                raise ValidationError(f"{name} must be > 0, got {value}", [name], "min")

    @property
    def ratio(self) -> float:
        if self.ratioToCycle is not None:
            return self.ratioToCycle
        return _DEFAULT_RATIO[self.protocol]

    @property
    def patchCycles(self) -> float:
        if self.patchCyclesPerT is not None:
            return self.patchCyclesPerT
        return _DEFAULT_PATCH_CYCLES[self.protocol]

    @property
    def expectedOutputError(self) -> Optional[float]:
        if self.outputError is not None:
            return self.outputError
        return _DEFAULT_OUTPUT_ERROR.get(self.protocol)

    @property
    def usesDefaultCost(self) -> bool:
        """is the cost constant of the active mode a built-in default?"""
        if self.costMode is CostMode.RATIO:
            return self.ratioToCycle is None
        return self.patchCyclesPerT is None

    def toDict(self) -> JObject:
        return {
            "protocol": self.protocol.value,
            "cost_mode": self.costMode.value,
            "d_f": self.distance,
            "ratio_to_cycle": self.ratio,
            "patch_cycles_per_t": self.patchCycles,
            "output_error": self.expectedOutputError,
            "cost_is_default": self.usesDefaultCost,
        }


@dataclass(frozen=True)
class FtqcConfig:
    logical: LogicalCircuit
    code: CodeParams
    factory: FactorySpec
    decoder: DecoderKind
    rho: float = 0.5
    cycleEnergyOverride: Optional[float] = None

    def __post_init__(self) -> None:
        if self.rho < 0:
            raise ValidationError(f"rho must be >= 0, got {self.rho}", ["rho"], "min")
        if self.cycleEnergyOverride is not None and self.cycleEnergyOverride < 0:
            raise ValidationError(
                "cycle_energy_override must be >= 0", ["cycle_energy_override"], "min"
            )


@dataclass(frozen=True)
class FtqcBreakdown(IBreakdown):
    """the three fault-tolerant cost centres and what produced them"""

    d: int
    pL: float
    layout: SurfaceLayout
    vLsCells: float
    eCycJoules: float
    latticeEnergyJoules: float
    eMsJoules: float
    magicEnergyJoules: float
    eDecJoules: float
    stallFactor: float
    wallSeconds: float
    decoder: DecoderEntry
    factory: FactorySpec

    @property
    def regime(self) -> str:
        return "ftqc"

    @property
    def totalExecJoules(self) -> float:
        return self.latticeEnergyJoules + self.magicEnergyJoules + self.eDecJoules

    @property
    def physicalQubits(self) -> int:
        return self.layout.physicalQubits

    def ledger(self) -> Dict[str, float]:
        return {
            "lattice": self.latticeEnergyJoules,
            "magic": self.magicEnergyJoules,
            "decoder": self.eDecJoules,
        }

    def metrics(self) -> JObject:
        return {
            "d": self.d,
            "logical_error_rate": self.pL,
            "physical_qubits_per_logical": self.layout.physicalQubitsPerPatch,
            "n_patches": self.layout.nPatches,
            "physical_qubits": self.physicalQubits,
            "v_ls_cells": self.vLsCells,
            "e_cyc_joules": self.eCycJoules,
            "e_ms_joules": self.eMsJoules,
            "stall_factor": self.stallFactor,
            "wall_seconds": self.wallSeconds,
            "decoder": self.decoder.toDict(),
            "factory": self.factory.toDict(),
        }


def _checkThreshold(p: float, pTh: float) -> None:
    if p >= pTh:
        raise InfeasibleError(
            f"above threshold: p={p:g} >= p_th={pTh:g}, no code distance suppresses errors"
        )


def logicalErrorRate(p: float, pTh: float, d: int, prefactorA: float = 1.0) -> float:
    """p_L = A * (p / p_th) ** ((d + 1) / 2)"""
    _checkOdd(d)
    if p < 0:
        raise ValidationError(f"p must be >= 0, got {p}", ["p"], "min")
    _checkThreshold(p, pTh)
    return prefactorA * (p / pTh) ** ((d + 1) // 2)


def roundingTolerance(d: int) -> float:
    """bound on the relative float error of A * (p / p_th) ** ((d + 1) / 2)"""
    return 2 * ((d + 1) // 2 + 1) * sys.float_info.epsilon


def solveDistance(
    p: float, pTh: float, targetPl: float, prefactorA: float = 1.0, marginSteps: int = 0
) -> int:
    """
    smallest odd d >= 3 with p_L(d) <= target, plus 2 * margin_steps

    p_L may exceed the target only by the rounding of the power, two ulps per
    factor, so that 0.1 ** 6 meets 1e-6 but 1e-6 does not meet 1e-6 * (1 - 1e-10)
    """
    _checkProbability(targetPl, "target_pl")
    if not p > 0:
        raise ValidationError(f"p must be > 0, got {p}", ["p"], "min")
    _checkThreshold(p, pTh)

    def meets(d: int) -> bool:
        pL = logicalErrorRate(p, pTh, d, prefactorA)
        return pL <= targetPl or math.isclose(pL, targetPl, rel_tol=roundingTolerance(d))

    # (d + 1) / 2 >= log(target / A) / log(p / p_th)
    steps = math.log(targetPl / prefactorA) / math.log(p / pTh)
    d = max(3, 2 * math.ceil(steps) - 1)
    while d > 3 and meets(d - 2):
        d -= 2
    while not meets(d):
        d += 2
    logger.debug(
        "solved d=%d for p=%g, p_th=%g, target=%g, A=%g", d, p, pTh, targetPl, prefactorA
    )
    return d + 2 * marginSteps


def spacetimeVolume(logical: LogicalCircuit, rho: float) -> float:
    """compiled V_ls when given, else ceil((1 + rho) * N_L) * D_L cells"""
    if logical.spacetimeVolumeOverride is not None:
        return logical.spacetimeVolumeOverride
    return _patchCount(logical, rho) * logical.logicalDepth


def roundEnergy(d: int, profile: TechnologyProfile) -> float:
    """one syndrome round: d^2 - 1 stabilizers, each 4 CNOTs plus measure and reset"""
    _checkOdd(d)
    perStabilizer = (
        4 * profile.energyOfClass("2q")
        + profile.energyOfClass("measure")
        + profile.energyOfClass("reset")
    )
    return (d * d - 1) * perStabilizer


def cycleEnergy(
    d: int, profile: TechnologyProfile, override: Optional[float] = None
) -> float:
    """E_cyc of one spacetime cell: d syndrome rounds"""
    if override is not None:
        return override
    return d * roundEnergy(d, profile)


def magicStateEnergy(
    factory: FactorySpec, eCyc: float, profile: TechnologyProfile
) -> float:
    """E_ms per output T state"""
    if factory.costMode is CostMode.RATIO:
        return factory.ratio * eCyc
    return factory.patchCycles * roundEnergy(factory.distance, profile)


def decoderEnergy(layout: SurfaceLayout, entry: DecoderEntry, wallSeconds: float) -> float:
    """one decoder per patch, powered for the whole run"""
    if wallSeconds < 0:
        raise ValidationError(f"wall time must be >= 0, got {wallSeconds}", ["wall_seconds"], "min")
    return layout.nPatches * entry.powerWatts * wallSeconds


def backlogStall(latencySeconds: float, budgetSeconds: float) -> float:
    """how much a slow decoder stretches the logical clock"""
    if not latencySeconds > 0 or not budgetSeconds > 0:
        raise ValidationError(
            f"latency and budget must be > 0, got {latencySeconds}, {budgetSeconds}",
            ["decode_budget_seconds"],
            "min",
        )
    return max(1.0, latencySeconds / budgetSeconds)


def ftqcWallTime(logicalDepth: int, d: int, tCycleSeconds: float, stall: float) -> float:
    """each logical step lasts d code cycles; patches run in parallel"""
    if logicalDepth < 0 or d < 1 or not tCycleSeconds > 0 or stall < 1:
        raise ValidationError(
            "wall time needs depth >= 0, d >= 1, t_cycle > 0 and stall >= 1", [], "min"
        )
    return (logicalDepth * d) * tCycleSeconds * stall


def ftqcExecEnergy(
    config: FtqcConfig,
    profile: TechnologyProfile,
    table: DecoderTable,
    wallSeconds: Optional[float] = None,
) -> FtqcBreakdown:
    """
    composes the fault-tolerant ledger for one configuration

    a measured wall_seconds replaces the modelled run time, so decoders are
    powered for the same duration as the rest of the machine
    """
    code = config.code
    _checkThreshold(code.p, code.pTh)
    if code.d is not None:
        d = code.d
    else:
        d = solveDistance(code.p, code.pTh, code.targetPl, code.prefactorA, code.marginSteps)
    pL = logicalErrorRate(code.p, code.pTh, d, code.prefactorA)

    layout = SurfaceLayout.fromLogical(config.logical, d, config.rho)
    volume = spacetimeVolume(config.logical, config.rho)
    eCyc = cycleEnergy(d, profile, config.cycleEnergyOverride)
    eMs = magicStateEnergy(config.factory, eCyc, profile)

    entry = decoderLookup(table, config.decoder, d)
    stall = backlogStall(entry.latencySeconds, profile.decodeBudgetSeconds)
    wall = ftqcWallTime(config.logical.logicalDepth, d, profile.cycleTimeSeconds, stall)
    if wallSeconds is not None:
        logger.debug("measured wall time %g s replaces the modelled %g s", wallSeconds, wall)
        wall = wallSeconds
    if stall > 1:
        logger.warning(
            "%s at d=%d takes %g s per round, over the %g s budget: stall x%.3g",
            config.decoder.value, d, entry.latencySeconds, profile.decodeBudgetSeconds, stall,
        )

    breakdown = FtqcBreakdown(
        d=d,
        pL=pL,
        layout=layout,
        vLsCells=volume,
        eCycJoules=eCyc,
        latticeEnergyJoules=volume * eCyc,
        eMsJoules=eMs,
        magicEnergyJoules=config.logical.tCount * eMs,
        eDecJoules=decoderEnergy(layout, entry, wall),
        stallFactor=stall,
        wallSeconds=wall,
        decoder=entry,
        factory=config.factory,
    )
    logger.debug("ftqc ledger: %s", breakdown.ledger())
    return breakdown

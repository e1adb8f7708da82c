# -*- coding: utf-8 -*-
"""error-mitigation stack and its expansion into executed gate totals"""

from __future__ import annotations

__copyright__ = "Copyright (c) 2026 qjoules contributors"

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Mapping, Optional, Tuple

from qjoules.circuit import GateCounts
from qjoules.errors import ValidationError

__all__ = ["FoldMode", "QemStack", "expandQem"]

logger = logging.getLogger(__name__)


class FoldMode(Enum):
    """how a zne fold factor inflates the gate count"""

    GLOBAL = "global"  # every gate folded: N(a) = a * N
    PARTIAL = "partial"  # F gates folded: N(a) = N + (a - 1) * F
    MEASURED = "measured"  # totals taken from a measured campaign


@dataclass(frozen=True)
class QemStack:
    """
    zne fold factors, pauli-twirl copies, shots and m3 calibration

    dynamical decoupling has no entry here: its pulses are gate insertions
    added to the base counts
    """

    zneFolds: Tuple[int, ...] = (1,)
    ptCopies: int = 1
    shots: int = 1
    foldMode: FoldMode = FoldMode.GLOBAL
    foldedGateCount: Optional[int] = None
    measuredFoldCounts: Optional[Mapping[int, int]] = None
    m3CalShots: int = 0
    m3AmortizeOver: int = 1

    def __post_init__(self) -> None:
        if not self.zneFolds:
            raise ValidationError("at least one fold factor is required", ["zne_folds"], "min")
        for fold in self.zneFolds:
            if fold < 1 or fold % 2 == 0:
                raise ValidationError(
                    f"fold factors are positive odd integers, got {fold}", ["zne_folds"], "odd"
                )
        if any(a >= b for a, b in zip(self.zneFolds, self.zneFolds[1:])):
            raise ValidationError(
                "fold factors must be strictly increasing", ["zne_folds"], "increasing"
            )
        for name, value in (("pt_copies", self.ptCopies), ("shots", self.shots),
                            ("m3_amortize_over", self.m3AmortizeOver)):
            if value < 1:
                raise ValidationError(f"{name} must be >= 1, got {value}", [name], "min")
        if self.m3CalShots < 0:
            raise ValidationError("m3_cal_shots must be >= 0", ["m3_cal_shots"], "min")
        if self.foldedGateCount is not None and self.foldedGateCount < 0:
            raise ValidationError("folded_gate_count must be >= 0", ["folded_gate_count"], "min")
        if self.foldMode is FoldMode.MEASURED:
            measured = self.measuredFoldCounts or {}
            missing = [a for a in self.zneFolds if a not in measured]
            if missing:
                raise ValidationError(
                    f"measured mode needs a total for every fold, missing {missing}",
                    ["measured_fold_counts"],
                    "required",
                )

    @property
    def foldSum(self) -> int:
        """sum of the fold factors"""
        return sum(self.zneFolds)

    @property
    def multiplier(self) -> int:
        """idealised circuit multiplier (sum of folds) * P"""
        return self.foldSum * self.ptCopies


def expandQem(base: GateCounts, qem: QemStack) -> List[Tuple[int, int]]:
    """
    PT-expanded gate total per fold factor, in fold order

    global:   P * a * N
    partial:  P * (N + (a - 1) * F)
    measured: the measured total verbatim (already includes P)
    """
    total = base.total
    if total <= 0:
        raise ValidationError("the base circuit has no gates", ["gate_counts"], "min")

    if qem.foldMode is FoldMode.MEASURED:
        assert qem.measuredFoldCounts is not None
        expanded = [(a, qem.measuredFoldCounts[a]) for a in qem.zneFolds]
    elif qem.foldMode is FoldMode.PARTIAL:
        folded = qem.foldedGateCount
        if folded is None:
            raise ValidationError(
                "partial mode needs folded_gate_count", ["folded_gate_count"], "required"
            )
        if folded > total:
            raise ValidationError(
                f"folded_gate_count {folded} exceeds the base total {total}",
                ["folded_gate_count"],
                "max",
            )
        expanded = [(a, qem.ptCopies * (total + (a - 1) * folded)) for a in qem.zneFolds]
    else:
        expanded = [(a, qem.ptCopies * a * total) for a in qem.zneFolds]

    logger.debug("%s folding of %d gates: %s", qem.foldMode.value, total, expanded)
    return expanded

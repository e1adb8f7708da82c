# -*- coding: utf-8 -*-
"""contracts shared by the regime-specific estimators"""

from __future__ import annotations

__copyright__ = "Copyright (c) 2026 qjoules contributors"

from typing import Dict
from abc import ABC, abstractmethod

from qjoules.types import JObject


class IBreakdown(ABC):
    """itemized execution energy of one regime (one term of E_tot)"""

    @property
    @abstractmethod
    def regime(self) -> str:
        """nisq or ftqc"""

    @property
    @abstractmethod
    def totalExecJoules(self) -> float:
        """E_exec of the regime"""

    @abstractmethod
    def ledger(self) -> Dict[str, float]:
        """
        the additive sub-terms in report order

        the values re-sum to totalExecJoules
        """

    @abstractmethod
    def metrics(self) -> JObject:
        """non-additive figures worth reporting (distances, counts, factors)"""

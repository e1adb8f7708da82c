# -*- coding: utf-8 -*-
"""error hierarchy, each class carries the cli exit code"""

from __future__ import annotations

__copyright__ = "Copyright (c) 2026 qjoules contributors"

from typing import List, Optional

__all__ = ["QjoulesError", "ValidationError", "InfeasibleError", "ResourceError"]


class QjoulesError(Exception):
    """base class of every error raised by qjoules"""

    exitCode: int = 1


class ValidationError(QjoulesError, ValueError):
    """
    invalid input: syntax, schema or invariant violation

    the path points at the offending field (e.g. ``nisq.qem.zne_folds``)
    """

    __slots__ = ("_message", "_path", "_validation")
    exitCode = 1

    def __init__(
        self, message: str, path: Optional[List[str]] = None, validation: str = "invalid"
    ) -> None:
        super().__init__(message)
        self._message = message
        self._path = path or []
        self._validation = validation

    def __repr__(self) -> str:
        return f"ValidationError({self._message}, {self.formattedPath})"

    def __str__(self) -> str:
        if not self._path:
            return self._message
        return ".".join(str(p) for p in self._path) + ": " + self._message

    @property
    def formattedPath(self) -> str:
        """a friendly path for the error"""
        if len(self._path) == 0:
            return "(root): " + self._validation
        return ".".join(str(p) for p in self._path) + ": " + self._validation

    @property
    def path(self) -> List[str]:
        """the path to the error"""
        return self._path

    @property
    def message(self) -> str:
        """the error message"""
        return self._message

    @property
    def validation(self) -> str:
        """the validation that failed"""
        return self._validation

    @staticmethod
    def inherit(error: Optional[ValidationError], path: List[str]) -> ValidationError:
        """inherit a ValidationError (combines the paths)"""
        assert error is not None
        return ValidationError(error.message, path + error.path, error.validation)


class InfeasibleError(QjoulesError):
    """the model has no answer for these inputs (e.g. p >= p_th)"""

    exitCode = 2


class ResourceError(QjoulesError):
    """a file could not be read"""

    exitCode = 3

"""schema building blocks for workload, profile and report documents"""

from __future__ import annotations
from typing import Any, Callable, Generic, List, Optional, Tuple, Type, TypeVar, Union
from abc import ABC, abstractmethod
import copy
import math

from .result import ValidationResult, ValidationError


T = TypeVar("T")
U = TypeVar("U")
IS = TypeVar("IS", bound="ISchemaType[Any]")

Refinement = Tuple[Callable[[Any], bool], str, str]


class INullable(Generic[IS]):
    """null handling shared by every schema type"""

    def __init__(self) -> None:
        super().__init__()
        self._nullable: bool = False



class ISchemaType(ABC, Generic[IS], INullable[IS]):
    """Schema Type"""

    def __init__(self) -> None:
        super().__init__()
        self._optional: bool = False
        self._default: Optional[Any] = None
        self._refinements: List[Refinement] = []

    def optional(self, nullable: bool = True) -> IS:
        """
        make the value optional (e.g., a key does not need to exist)
        if nullable is `False` and `None` is passed, the result will be invalid
        """
        self._optional = True
        self._nullable = nullable
        return self  # type: ignore

    def default(self, value: T) -> IS:
        """set the value a missing or null key resolves to"""
        self._default = value
        self._optional = True
        self._nullable = True
        return self  # type: ignore

    @property
    def isOptional(self) -> bool:
        """may the key be absent?"""
        return self._optional

    @property
    def defaultValue(self) -> Optional[Any]:
        """value used when the key is absent"""
        return self._default

    def refine(self, check: Callable[[Any], bool], message: str, validation: str) -> IS:
        """add a custom check that runs after the type checks succeeded"""
        self._refinements.append((check, message, validation))
        return self  # type: ignore

    @abstractmethod
    def validate(self, value: T) -> ValidationResult[T]:
        """
        validates the value

        returns a ValidationResult,
        which contains an error if the value is invalid
        or the (normalised) value if valid
        """
        return ValidationResult.ok(value)

    def _checkType(
        self, value: Any, to: Union[Type[Any], Tuple[Type[Any], ...]], name: str
    ) -> ValidationResult[Any]:
        """strict type check; documents are never coerced"""
        if self._nullable and value is None:
            return ValidationResult.ok(copy.deepcopy(self._default), True)

        # bool is an int subclass, but never a count or a measurement
        if isinstance(value, bool) and bool not in (to if isinstance(to, tuple) else (to,)):
            return ValidationResult.err(
                ValidationError(f"expected {name}, got boolean {value}", [], "type")
            )
        if not isinstance(value, to):
            return ValidationResult.err(
                ValidationError(
                    f"expected {name}, got {type(value).__name__} {value!r}", [], "type"
                )
            )
        if isinstance(value, float) and not math.isfinite(value):
            return ValidationResult.err(
                ValidationError(f"expected a finite {name}, got {value}", [], "finite")
            )
        return ValidationResult.ok(value)

    def _applyRefinements(self, result: ValidationResult[T]) -> ValidationResult[T]:
        if not result:
            return result
        value = result.unwrapOr(None)  # type: ignore
        if value is None:
            return result
        for check, message, validation in self._refinements:
            if not check(value):
                result.invalidate(ValidationError(f"{message} ({value!r})", [], validation))
                return result
        return result

    def __call__(self, value: T) -> T:
        """
        expect the value to be valid,
        otherwise raise an error
        """
        return self.expect(value)

    def expect(self, value: T, msg: Optional[str] = None) -> T:
        """
        expect the value to be valid,
        otherwise raise an error with the message, if provided,
        otherwise raise the original error
        """
        return self.validate(value).expect(msg)

    def error(self, value: T) -> Optional[ValidationError]:
        """
        get the error if the value is invalid,
        otherwise return None
        """
        return self.validate(value).error

    def valid(self, value: T) -> bool:
        """
        is the value valid?
        """
        return self.validate(value).valid()


class IWithEnum(ABC, Generic[T, IS], INullable[IS]):
    """Schema Type restricted to a closed set of values"""

    def __init__(self) -> None:
        super().__init__()
        self._enum: Optional[List[T]] = None

    def validate(self, value: T) -> ValidationResult[T]:
        """validate the value"""
        if not self._enum:
            return ValidationResult.ok(value)

        if self._nullable and value is None:
            return ValidationResult.ok(value, True)  # type: ignore

        if value not in self._enum:
            return ValidationResult.err(
                ValidationError(f"{value!r} is not one of {self._enum}", [], "enum")
            )
        return ValidationResult.ok(value)

    def enum(self, *values: U) -> IS:
        """set the enum values"""
        self._enum = list(values)  # type: ignore
        return self  # type: ignore


class IWithRange(ABC, Generic[T, IS], INullable[IS]):
    """Schema Type with a bounded magnitude (number value, array length)"""

    def __init__(self) -> None:
        super().__init__()
        self._min: Optional[float] = None
        self._max: Optional[float] = None
        self._minInclusive: bool = True
        self._maxInclusive: bool = True

    @abstractmethod
    def magnitude(self, value: Any) -> float:
        """the quantity the bounds apply to"""

    def validate(self, value: T) -> ValidationResult[T]:
        """validate the value"""
        if self._nullable and value is None:
            return ValidationResult.ok(value, True)  # type: ignore

        size = self.magnitude(value)
        if self._min is not None:
            if self._minInclusive and size < self._min:
                return ValidationResult.err(
                    ValidationError(f"expected {size} to be >= {self._min}", [], "min")
                )
            if not self._minInclusive and size <= self._min:
                return ValidationResult.err(
                    ValidationError(f"expected {size} to be > {self._min}", [], "min")
                )
        if self._max is not None:
            if self._maxInclusive and size > self._max:
                return ValidationResult.err(
                    ValidationError(f"expected {size} to be <= {self._max}", [], "max")
                )
            if not self._maxInclusive and size >= self._max:
                return ValidationResult.err(
                    ValidationError(f"expected {size} to be < {self._max}", [], "max")
                )
        return ValidationResult.ok(value)

    def min(self, min_: float, inclusive: bool = True) -> IS:
        """set the lower bound"""
        self._min = min_
        self._minInclusive = inclusive
        return self  # type: ignore

    def max(self, max_: float, inclusive: bool = True) -> IS:
        """set the upper bound"""
        self._max = max_
        self._maxInclusive = inclusive
        return self  # type: ignore

    def positive(self) -> IS:
        """strictly greater than zero"""
        return self.min(0, False)

    def nonNegative(self) -> IS:
        """zero or more"""
        return self.min(0, True)

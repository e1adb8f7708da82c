"""validators for the json documents qjoules reads (workloads, profiles, reports)"""

from __future__ import annotations
from typing import Any, Dict, List, Optional, Pattern, TypeVar, Union
import copy
import re

from qjoules.types import JObject

from qjoules.schema.result import ValidationResult, ValidationError
from qjoules.schema.base import ISchemaType, IWithRange, IWithEnum


T = TypeVar("T")

__all__ = [
    "String",
    "Integer",
    "Number",
    "Boolean",
    "Object",
    "Array",
    "Mapping",
    "ValidationResult",
    "ValidationError",
]


class String(ISchemaType["String"], IWithEnum[str, "String"]):
    """String Schema Type"""

    def __init__(self) -> None:
        super().__init__()
        self._regex: Optional[Union[Pattern[str], str]] = None
        self._nonEmpty: bool = False

    def validate(self, value: Any) -> ValidationResult[str]:
        result = self._checkType(value, str, "a string")
        if not result or result.unwrapOr(None) is None:
            return result

        result.update(IWithEnum.validate(self, result.unwrap()))
        if not result:
            return result

        if self._nonEmpty and not result.unwrap():
            result.invalidate(ValidationError("expected a non-empty string", [], "min"))
            return result

        if self._regex is not None:
            if isinstance(self._regex, str):
                self._regex = re.compile(self._regex)
            if not self._regex.match(result.unwrap()):
                result.invalidate(
                    ValidationError(f"string didn't match {self._regex.pattern}", [], "regex")
                )
                return result
        return self._applyRefinements(result)

    def nonEmpty(self) -> String:
        """reject the empty string"""
        self._nonEmpty = True
        return self

    def regex(self, regex: Union[str, Pattern[str]]) -> String:
        """validate the value against a regex"""
        self._regex = regex
        return self


class Integer(
    ISchemaType["Integer"], IWithEnum[int, "Integer"], IWithRange[int, "Integer"]
):
    """
    Integer Schema Type

    counts in workload files are exact, so floats (even 3.0) are rejected
    """

    def validate(self, value: Any) -> ValidationResult[int]:
        result = self._checkType(value, int, "an integer")
        if not result or result.unwrapOr(None) is None:
            return result

        result.update(IWithEnum.validate(self, result.unwrap()))
        if not result:
            return result

        result.update(IWithRange.validate(self, result.unwrap()))
        return self._applyRefinements(result)

    def magnitude(self, value: int) -> float:
        return value

    def odd(self) -> Integer:
        """only odd integers (code distances, zne fold factors)"""
        return self.refine(lambda v: v % 2 == 1, "expected an odd integer", "odd")


class Number(
    ISchemaType["Number"], IWithEnum[float, "Number"], IWithRange[float, "Number"]
):
    """Number Schema Type (int or finite float)"""

    def validate(self, value: Any) -> ValidationResult[float]:
        result = self._checkType(value, (int, float), "a number")
        if not result or result.unwrapOr(None) is None:
            return result

        result.update(IWithEnum.validate(self, result.unwrap()))
        if not result:
            return result

        result.update(IWithRange.validate(self, result.unwrap()))
        return self._applyRefinements(result)

    def magnitude(self, value: float) -> float:
        return value

    def probability(self) -> Number:
        """open interval (0, 1)"""
        return self.min(0, False).max(1, False)


class Boolean(ISchemaType["Boolean"]):
    """Boolean Schema Type"""

    def validate(self, value: Any) -> ValidationResult[bool]:
        return self._checkType(value, bool, "a boolean")


class Object(ISchemaType["Object"]):
    """Object Schema Type"""

    def __init__(
        self,
        body: Optional[Dict[str, ISchemaType[Any]]] = None,
        additionalProperties: bool = False,
    ) -> None:
        super().__init__()
        self._body = body or {}
        self._allowAdditionalProperties = additionalProperties

    def withAdditionalProperties(self, withAdditionalProperties: bool = True) -> Object:
        """allow keys the body does not declare"""
        self._allowAdditionalProperties = withAdditionalProperties
        return self

    def validate(self, value: Any) -> ValidationResult[JObject]:
        result = self._checkType(value, dict, "an object")
        if not result or result.unwrapOr(None) is None:
            return result
        value = result.unwrap()

        normalised: JObject = {}
        for key, schema in self._body.items():
            if key not in value:
                if not schema.isOptional:
                    return ValidationResult.err(
                        ValidationError(f"expected {key} to be present", [key], "required")
                    )
                if schema.defaultValue is not None:
                    normalised[key] = copy.deepcopy(schema.defaultValue)
                continue

            keyRes = schema.validate(value[key])
            if not keyRes:
                return ValidationResult.err(ValidationError.inherit(keyRes.error, [key]))
            normalised[key] = keyRes.unwrapOr(None)

        if not self._allowAdditionalProperties:
            for key in value:
                if key not in self._body:
                    return ValidationResult.err(
                        ValidationError(
                            f"unexpected property {key}", [key], "additionalProperties"
                        )
                    )
        else:
            for key in value:
                normalised.setdefault(key, value[key])

        return self._applyRefinements(ValidationResult.ok(normalised))


class Array(ISchemaType["Array"], IWithRange[List[Any], "Array"]):
    """Array Schema Type"""

    def __init__(self, item: ISchemaType[Any]) -> None:
        super().__init__()
        self._item = item

    def validate(self, value: Any) -> ValidationResult[List[Any]]:
        result = self._checkType(value, list, "an array")
        if not result or result.unwrapOr(None) is None:
            return result

        result.update(IWithRange.validate(self, result.unwrap()))
        if not result:
            return result

        values: List[Any] = []
        for index, item in enumerate(result.unwrap()):
            res = self._item.validate(item)
            if not res.valid():
                return ValidationResult.err(ValidationError.inherit(res.error, [f"[{index}]"]))
            values.append(res.unwrapOr(None))
        return self._applyRefinements(ValidationResult.ok(values))

    def magnitude(self, value: List[Any]) -> float:
        return len(value)

    def strictlyIncreasing(self) -> Array:
        """every element greater than its predecessor"""
        return self.refine(
            lambda v: all(a < b for a, b in zip(v, v[1:])),
            "expected strictly increasing values",
            "increasing",
        )


class Mapping(ISchemaType["Mapping"], IWithRange[JObject, "Mapping"]):
    """object with free-form keys and uniformly typed values"""

    def __init__(self, values: ISchemaType[Any], keys: Optional[String] = None) -> None:
        super().__init__()
        self._values = values
        self._keys = keys or String().nonEmpty()

    def validate(self, value: Any) -> ValidationResult[JObject]:
        result = self._checkType(value, dict, "an object")
        if not result or result.unwrapOr(None) is None:
            return result
        value = result.unwrap()

        result.update(IWithRange.validate(self, result.unwrap()))
        if not result:
            return result

        normalised: JObject = {}
        for key, item in value.items():
            keyRes = self._keys.validate(key)
            if not keyRes:
                return ValidationResult.err(ValidationError.inherit(keyRes.error, [key]))
            res = self._values.validate(item)
            if not res:
                return ValidationResult.err(ValidationError.inherit(res.error, [key]))
            normalised[key] = res.unwrapOr(None)
        return self._applyRefinements(ValidationResult.ok(normalised))

    def magnitude(self, value: JObject) -> float:
        return len(value)

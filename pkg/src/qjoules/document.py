# -*- coding: utf-8 -*-
"""json documents: workloads, profiles and machine-format reports"""

from __future__ import annotations

__copyright__ = "Copyright (c) 2026 qjoules contributors"

import copy
import json
import re
from typing import Any, List, Optional, Tuple, Type, TypeVar, Union

from qjoules.errors import ResourceError, ValidationError
from qjoules.types import JArray, JObject

T = TypeVar("T")

__all__ = ["Document", "Chain", "readText"]


def readText(path: str, encoding: str = "utf-8") -> str:
    """reads a whole file, turning OS failures into ResourceError"""
    try:
        with open(path, "r", encoding=encoding) as file:
            return file.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ResourceError(f"cannot read {path}: {exc}") from exc


class Document:
    """a json object with typed accessors"""

    __slots__ = ("_data",)

    def __init__(self, data: Optional[JObject] = None) -> None:
        self._data: JObject = data if data is not None else {}

    def __bool__(self) -> bool:
        return bool(self._data)

    def __contains__(self, key: str) -> bool:
        return key in self._data

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Document):
            return self._data == other._data
        return NotImplemented

    def __repr__(self) -> str:
        return f"Document({self._data!r})"

    def assertGet(self, key: str, type_: Type[T]) -> T:
        """
        the key exists & is the specified type

        raises ValidationError otherwise

        Usage: the document was validated by a schema
        """
        if key not in self._data:
            raise ValidationError(f"expected {key} to be present", [key], "required")
        val = self._data[key]
        if not isinstance(val, type_):
            raise ValidationError(
                f"expected {type_.__name__}, got {type(val).__name__}", [key], "type"
            )
        return val

    def optionalGet(self, key: str, type_: Type[T]) -> Optional[T]:
        """
        tries to get the key

        if the key does not exist, None is returned
        if the key exists but is not the specified type, None is returned
        """
        value = self._data.get(key)
        if isinstance(value, type_):
            return value
        return None

    def ensure(self, key: str, type_: Type[T], default: T) -> T:
        """
        the key's value if it has the specified type, the default otherwise
        """
        value = self._data.get(key)
        if isinstance(value, type_):
            return value
        return default

    def assertNumber(self, key: str) -> float:
        """assertGet for int-or-float values (bool excluded)"""
        value = self._data.get(key)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(f"expected a number, got {value!r}", [key], "type")
        return value

    def optionalNumber(self, key: str) -> Optional[float]:
        """the numeric value, None when absent or not a number"""
        value = self._data.get(key)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return None
        return value

    def section(self, key: str) -> Optional[Document]:
        """a nested object as Document, None when absent or null"""
        value = self.optionalGet(key, dict)
        if value is None:
            return None
        return Document(value)

    def toString(self, indent: Optional[int] = 2) -> str:
        """canonical text: insertion order is kept, so builders fix the key order"""
        return json.dumps(self._data, indent=indent, ensure_ascii=False) + "\n"

    def toDict(self) -> JObject:
        """returns the dict representation of the data"""
        return self._data

    def copy(self) -> Document:
        """deep copy, safe to mutate through chain().assign"""
        return Document(copy.deepcopy(self._data))

    @staticmethod
    def fromString(string: str) -> Document:
        """
        parses a json object

        syntax errors are reported with line and column
        """
        try:
            value = json.loads(string)
        except json.JSONDecodeError as exc:
            raise ValidationError(
                f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                [],
                "syntax",
            ) from exc
        if not isinstance(value, dict):
            raise ValidationError(
                f"expected a json object at top level, got {type(value).__name__}",
                [],
                "type",
            )
        return Document(value)

    @staticmethod
    def fromFile(path: str, encoding: str = "utf-8") -> Document:
        """returns a Document from a file"""
        return Document.fromString(readText(path, encoding))

    def chain(self) -> Chain:
        """
        dotted path access (``ftqc.logical.t_count``, ``nisq.qem.zne_folds[1]``)
        """
        return Chain(self)


class _ChainLink:
    """chain link"""

    __slots__ = ("_key", "_optional", "_index")

    def __init__(self, key: str) -> None:
        self._key: Union[str, int] = key
        self._optional = False
        self._index = False

        if key.endswith("?"):
            self._key = key[:-1]
            key = key[:-1]
            self._optional = True
        if key.startswith("[") and key.endswith("]"):
            try:
                self._key = int(key[1:-1])
            except ValueError as exc:
                raise ValidationError(f"invalid index {key}", [], "path") from exc
            self._index = True
        if key == "":
            raise ValidationError("empty path segment", [], "path")

    def __repr__(self) -> str:
        return f"ChainLink({self._key}, optional={self._optional}, index={self._index})"

    @property
    def key(self) -> Union[str, int]:
        """returns the key"""
        return self._key

    @property
    def optional(self) -> bool:
        """returns true if the link is optional"""
        return self._optional

    @property
    def index(self) -> bool:
        """returns true if the link is an index"""
        return self._index


class Chain:
    """optional chaining over a Document"""

    __slots__ = ("_document",)

    def __init__(self, document: Document) -> None:
        self._document = document

    @staticmethod
    def _createChainLinks(chain: str) -> List[_ChainLink]:
        chain = re.sub(r"(\w|\?)\[", r"\1.[", chain)
        return [_ChainLink(key) for key in chain.split(".")]

    def _prepare(
        self, chain: str
    ) -> Optional[Tuple[Union[JObject, JArray], Union[str, int]]]:
        """
        walks the chain up to the last link

        returns None if an optional link could not be resolved
        else, returns (parent, last_key)
        raises ValidationError for a broken non-optional link
        """
        links = self._createChainLinks(chain)
        last = links.pop()
        value: Any = self._document.toDict()
        walked: List[str] = []

        for link in links:
            walked.append(str(link.key))
            if link.index and isinstance(value, list) and isinstance(link.key, int):
                if link.key < len(value):
                    value = value[link.key]
                    continue
            elif not link.index and isinstance(value, dict) and link.key in value:
                value = value[link.key]
                continue
            if link.optional:
                return None
            raise ValidationError(f"unknown path {chain}", walked, "path")

        if last.index and isinstance(value, list):
            return value, last.key
        if not last.index and isinstance(value, dict):
            return value, last.key
        raise ValidationError(f"unknown path {chain}", walked, "path")

    def __getitem__(self, chain: str) -> Any:
        return self.get(chain)

    def get(self, chain: str) -> Any:
        """resolves the chain, None if it does not resolve"""
        try:
            value = self._prepare(chain)
        except ValidationError:
            return None
        if value is None:
            return None
        parent, last = value
        if isinstance(parent, list):
            assert isinstance(last, int)
            return parent[last] if last < len(parent) else None
        return parent.get(last)  # type: ignore

    def resolve(self, chain: str) -> Any:
        """
        resolves the chain & returns the value

        raises ValidationError if the chain is invalid
        """
        value = self._prepare(chain)
        if value is None:
            raise ValidationError(f"unknown path {chain}", [], "path")
        parent, last = value
        if isinstance(parent, list):
            assert isinstance(last, int)
            if last >= len(parent):
                raise ValidationError(f"unknown path {chain}", [], "path")
            return parent[last]
        if last not in parent:
            raise ValidationError(f"unknown path {chain}", [], "path")
        return parent[last]  # type: ignore

    def assign(self, chain: str, value: Any) -> None:
        """
        replaces the value the chain points at

        the target must already exist; assign never creates keys
        """
        self.resolve(chain)
        prepared = self._prepare(chain)
        assert prepared is not None
        parent, last = prepared
        parent[last] = value  # type: ignore

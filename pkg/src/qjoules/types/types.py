# -*- coding: utf-8 -*-
"""json aliases shared by documents, schemas and reports"""

__copyright__ = "Copyright (c) 2026 qjoules contributors"

from typing import Any, Dict, List

__all__ = ["JObject", "JArray"]

JObject = Dict[str, Any]
JArray = List[Any]

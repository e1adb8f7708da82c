# -*- coding: utf-8 -*-
"""qjoules"""

__copyright__ = "Copyright (c) 2026 qjoules contributors"

from qjoules.types.types import *

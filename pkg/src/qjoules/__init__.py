# -*- coding: utf-8 -*-
"""qjoules"""

__copyright__ = "Copyright (c) 2026 qjoules contributors"

from qjoules.errors import *
from qjoules.circuit import *
from qjoules.qem import *
from qjoules.hardware import *
from qjoules.nisq import *
from qjoules.ftqc import *
from qjoules.report import *
from qjoules.overhead import *
from qjoules.workload import *
from qjoules.estimate import *

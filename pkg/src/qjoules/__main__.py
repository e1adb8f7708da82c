# -*- coding: utf-8 -*-
"""python -m qjoules"""

__copyright__ = "Copyright (c) 2026 qjoules contributors"

from qjoules.cli import main

raise SystemExit(main())

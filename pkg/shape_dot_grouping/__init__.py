# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

from . import models
from . import report
from . import wizards

__version__ = "1.1.0"

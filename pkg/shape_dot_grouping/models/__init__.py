# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

from . import config_settings
from . import geometry
from . import fourier
from . import shapes
from . import grouping
from . import retrieval

# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

from . import test_geometry
from . import test_shapes
from . import test_grouping
from . import test_retrieval
from . import test_render
from . import test_cli

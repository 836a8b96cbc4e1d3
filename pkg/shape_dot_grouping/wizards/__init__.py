# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

from . import sample
from . import group
from . import sweep
from . import retrieve
from . import render
from . import make_db

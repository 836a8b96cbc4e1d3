# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

import logging
from dataclasses import dataclass

from ..exceptions import BadParameter
from ..models.config_settings import DEFAULT_SETTINGS
from ..models.shapes import DEFAULT_DB_KINDS, builtin_db, builtin_names, save_db

_logger = logging.getLogger(__name__)


@dataclass
class BuiltinDbExport:
    out: str
    kinds: tuple = DEFAULT_DB_KINDS
    n: int = None
    settings: object = DEFAULT_SETTINGS

    def run(self):
        unknown = [kind for kind in self.kinds if kind not in builtin_names()]
        if unknown:
            raise BadParameter(
                "Unknown builtin shape(s) {}; choose among {}.".format(
                    ", ".join(unknown), ", ".join(builtin_names())
                )
            )
        n = self.settings.builtin_points if self.n is None else self.n
        db = builtin_db(tuple(self.kinds), n)
        save_db(db, self.out)
        _logger.info("Exported %d builtin shape(s) to %s", len(db), self.out)
        return db

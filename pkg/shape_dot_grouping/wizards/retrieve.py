# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

import json
import logging
import math
from dataclasses import dataclass

from ..models.config_settings import DEFAULT_SETTINGS
from ..models.retrieval import retrieve
from ..models.shapes import ShapeDb, load_db

_logger = logging.getLogger(__name__)


def _finite_or_text(value):
    if value is None or math.isfinite(value):
        return value
    return str(value)


def step_log(outcome):
    return {
        "shape": outcome.shape,
        "n": outcome.n,
        "cap": outcome.cap,
        "reason": outcome.reason,
        "steps": [
            {
                "n": step.n,
                "boundary_size": step.boundary_size,
                "hamiltonian": step.hamiltonian,
                "skipped": step.skipped,
                "distances": dict(zip(outcome.names, step.distances)),
                "is_min": step.is_min,
                "ratio": _finite_or_text(step.ratio),
                "passed": step.passed,
            }
            for step in outcome.steps
        ],
    }


@dataclass
class ShapeRetrieve:
    db: object
    name: str
    cap: int = None
    log: str = None
    settings: object = DEFAULT_SETTINGS

    def run(self):
        db = self.db if isinstance(self.db, ShapeDb) else load_db(self.db)
        outcome = retrieve(
            db,
            self.name,
            cap=self.settings.retrieval_cap if self.cap is None else self.cap,
            start=self.settings.retrieval_start,
            step=self.settings.retrieval_step,
            margin=self.settings.retrieval_margin,
        )
        if self.log:
            with open(self.log, "w", encoding="utf-8") as handle:
                json.dump(step_log(outcome), handle, indent=1)
                handle.write("\n")
            _logger.info(
                "Wrote %d retrieval step(s) to %s", len(outcome.steps), self.log
            )
        return outcome

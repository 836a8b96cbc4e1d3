# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

import dataclasses
import io
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass

from ..exceptions import BadParameter, UserError
from ..models.config_settings import DEFAULT_SETTINGS
from ..models.grouping import METHODS, SURFACE, group, grouping_score
from ..models.retrieval import m_from_scores, retrieve
from ..models.shapes import ShapeDb, load_db, sample_uniform
from ..report.sweep_csv import ShapeMetric, SweepRecord, write_sweep_csv

_logger = logging.getLogger(__name__)


def _sweep_cell(task):
    outline, method, k, timing = task
    try:
        sample = sample_uniform(outline, k)
        started = time.perf_counter()
        result = group(sample, method)
        elapsed = (time.perf_counter() - started) * 1000.0
        xi = grouping_score(result, sample)
    except UserError as err:
        _logger.warning(
            "Sweep cell (%s, %s, K=%d) failed: %s", outline.name, method, k, err
        )
        return SweepRecord(outline.name, method, k, error=type(err).__name__)
    return SweepRecord(
        outline.name,
        method,
        k,
        xi,
        result.hamiltonian if method == SURFACE else None,
        elapsed if timing else 0.0,
    )


def _retrieval_cell(task):
    db, name, settings = task
    try:
        outcome = retrieve(
            db,
            name,
            cap=settings.retrieval_cap,
            start=settings.retrieval_start,
            step=settings.retrieval_step,
            margin=settings.retrieval_margin,
        )
    except UserError as err:
        _logger.warning("Retrieval of '%s' failed: %s", name, err)
        return None
    return outcome.n


@contextmanager
def _mapper(jobs):
    if jobs <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        yield executor.map


@dataclass
class ShapeSweep:
    """Grouping score of every db shape for every method over a K grid,
    with the m-metric and retrievable sample size per shape."""

    db: object
    out: str = None
    methods: tuple = METHODS
    kmin: int = None
    kmax: int = None
    kstep: int = None
    jobs: int = 1
    timing: bool = False
    settings: object = DEFAULT_SETTINGS

    def _grid(self):
        overrides = {
            key: value
            for key, value in (
                ("grid_min", self.kmin),
                ("grid_max", self.kmax),
                ("grid_step", self.kstep),
            )
            if value is not None
        }
        return dataclasses.replace(self.settings, **overrides).grid

    def _load(self):
        if isinstance(self.db, ShapeDb):
            return self.db
        return load_db(self.db)

    def run(self):
        methods = tuple(sorted(set(self.methods)))
        unknown = [method for method in methods if method not in METHODS]
        if not methods or unknown:
            raise BadParameter(
                "Sweep methods must be among {}, got {}.".format(
                    ", ".join(METHODS), ", ".join(self.methods) or "none"
                )
            )
        if self.jobs < 1:
            raise BadParameter("The job count must be at least 1.")
        grid = self._grid()
        db = self._load()
        tasks = [
            (entry.outline, method, k, self.timing)
            for entry in db
            for method in methods
            for k in grid
        ]
        with _mapper(self.jobs) as mapper:
            records = list(mapper(_sweep_cell, tasks))
            if SURFACE in methods and len(db) >= 2:
                retrieved = dict(
                    zip(
                        db.names,
                        mapper(
                            _retrieval_cell,
                            [(db, name, self.settings) for name in db.names],
                        ),
                    )
                )
            else:
                retrieved = {}
        metrics = []
        for name in db.names:
            for method in methods:
                scores = {
                    record.k: -math.inf if record.error else record.xi
                    for record in records
                    if record.shape == name and record.method == method
                }
                metrics.append(
                    ShapeMetric(
                        name,
                        method,
                        m_from_scores(scores, self.settings.m_threshold),
                        retrieved.get(name),
                        method == SURFACE,
                    )
                )
        _logger.info(
            "Swept %d shape(s) x %d method(s) x %d K value(s)",
            len(db),
            len(methods),
            len(grid),
        )
        buffer = io.StringIO()
        write_sweep_csv(buffer, records, metrics)
        text = buffer.getvalue()
        if self.out:
            with open(self.out, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
        return text

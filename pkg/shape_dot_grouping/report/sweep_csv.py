# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

import csv
import logging
import math
from dataclasses import dataclass

import numpy as np

_logger = logging.getLogger(__name__)

HEADER = ("shape", "method", "K", "xi", "hamiltonian", "runtime_ms")
METRIC_HEADER = ("shape", "method", "m", "n")
MEAN_HEADER = ("method", "K", "mean_xi", "sem_xi")
NOT_APPLICABLE = "n/a"
NONE = "none"


@dataclass(frozen=True)
class SweepRecord:
    shape: str
    method: str
    k: int
    xi: float = None
    hamiltonian: bool = None
    runtime_ms: float = 0.0
    error: str = None

    @property
    def sort_key(self):
        return (self.shape, self.method, self.k)

    def as_row(self):
        if self.error:
            return (
                self.shape,
                self.method,
                str(self.k),
                "error",
                "error:{}".format(self.error),
                "{:.3f}".format(self.runtime_ms),
            )
        if self.hamiltonian is None:
            hamiltonian = NOT_APPLICABLE
        else:
            hamiltonian = "true" if self.hamiltonian else "false"
        return (
            self.shape,
            self.method,
            str(self.k),
            "{:.6f}".format(self.xi),
            hamiltonian,
            "{:.3f}".format(self.runtime_ms),
        )


@dataclass(frozen=True)
class ShapeMetric:
    """m-metric of one shape and method; ``n`` only for the surface method."""

    shape: str
    method: str
    m: int = None
    n: int = None
    n_applicable: bool = False

    def as_row(self):
        if not self.n_applicable:
            n = NOT_APPLICABLE
        else:
            n = NONE if self.n is None else str(self.n)
        return (self.shape, self.method, NONE if self.m is None else str(self.m), n)


def _mean(values):
    return "{:.2f}".format(sum(values) / len(values)) if values else NONE


def mean_rows(metrics):
    rows = []
    for method in sorted({metric.method for metric in metrics}):
        selected = [metric for metric in metrics if metric.method == method]
        ms = [metric.m for metric in selected if metric.m is not None]
        if any(metric.n_applicable for metric in selected):
            n = _mean([metric.n for metric in selected if metric.n is not None])
        else:
            n = NOT_APPLICABLE
        rows.append(("ALL", method, _mean(ms), n))
    return rows


def score_rows(records):
    """Mean grouping score and its standard error over shapes, per method and K."""
    cells = {}
    for record in records:
        if not record.error:
            cells.setdefault((record.method, record.k), []).append(record.xi)
    rows = []
    for (method, k), scores in sorted(cells.items()):
        scores = np.array(scores)
        sem = scores.std(ddof=1) / math.sqrt(len(scores)) if len(scores) > 1 else 0.0
        rows.append(
            (method, str(k), "{:.6f}".format(scores.mean()), "{:.6f}".format(sem))
        )
    return rows


def write_sweep_csv(handle, records, metrics):
    """Write the per-cell rows, then the summary block when there is one."""
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(HEADER)
    for record in sorted(records, key=lambda r: r.sort_key):
        writer.writerow(record.as_row())
    if not metrics:
        return
    metrics = sorted(metrics, key=lambda m: (m.shape, m.method))
    writer.writerow(())
    writer.writerow(METRIC_HEADER)
    for metric in metrics:
        writer.writerow(metric.as_row())
    for row in mean_rows(metrics):
        writer.writerow(row)
    writer.writerow(())
    writer.writerow(MEAN_HEADER)
    for row in score_rows(records):
        writer.writerow(row)
    _logger.debug("Wrote %d sweep rows", len(records))

# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).
"""Shape retrieval from grouped dots and the m-metric."""

import logging
import math
from dataclasses import dataclass, field

from ..exceptions import BadParameter, NoTermination
from .config_settings import (
    GRID_MAX,
    GRID_MIN,
    GRID_STEP,
    M_THRESHOLD,
    MIN_DESCRIPTOR_POINTS,
    RETRIEVAL_CAP,
    RETRIEVAL_MARGIN,
    RETRIEVAL_START,
    RETRIEVAL_STEP,
)
from .fourier import Descriptor, descriptor, distance
from .grouping import group, group_surface, grouping_score
from .shapes import sample_uniform

_logger = logging.getLogger(__name__)

__all__ = [
    "Descriptor",
    "MMetric",
    "RetrievalOutcome",
    "RetrievalStep",
    "descriptor",
    "distance",
    "m_from_scores",
    "m_metric",
    "retrieve",
]

DEFAULT_GRID = tuple(range(GRID_MIN, GRID_MAX + 1, GRID_STEP))


@dataclass(frozen=True)
class RetrievalStep:
    n: int
    boundary_size: int
    hamiltonian: bool
    distances: tuple = ()
    is_min: bool = False
    ratio: float = None
    passed: bool = False

    @property
    def skipped(self):
        return not self.distances


@dataclass(frozen=True)
class RetrievalOutcome:
    shape: str
    names: tuple
    n: int = None
    steps: tuple = ()
    cap: int = RETRIEVAL_CAP
    reason: str = None

    @property
    def succeeded(self):
        return self.n is not None

    @property
    def margin(self):
        """Distance ratio to the nearest other shape at the returned n."""
        if not self.succeeded:
            return None
        return self.steps[-1].ratio

    def ensure_terminated(self):
        if not self.succeeded:
            raise NoTermination(
                "Shape '{}' was not retrieved up to n = {} ({}).".format(
                    self.shape, self.cap, self.reason
                )
            )
        return self


def _margin_ratio(own, nearest_other):
    if own == 0:
        return math.inf if nearest_other > 0 else 1.0
    return nearest_other / own


def retrieve(
    db,
    name,
    *,
    cap=RETRIEVAL_CAP,
    start=RETRIEVAL_START,
    step=RETRIEVAL_STEP,
    margin=RETRIEVAL_MARGIN,
):
    """Smallest sample size at which the grouped dots of ``name`` retrieve it.

    For n = start, start + step, ... up to ``cap``, sample the stored
    outline, group it, describe the boundary and compare with every
    stored descriptor. Success needs the own distance to be the unique
    minimum, and every other distance to exceed it ``margin`` times.
    """
    entry = db.get(name)
    if len(db) < 2:
        raise BadParameter("Retrieval needs a database of at least 2 shapes.")
    if start < MIN_DESCRIPTOR_POINTS or step <= 0:
        raise BadParameter(
            "Retrieval must start at n >= {} with a positive step.".format(
                MIN_DESCRIPTOR_POINTS
            )
        )
    names = tuple(db.names)
    own = names.index(name)
    stored = [item.descriptor for item in db]
    available = len(entry.outline.points)
    steps = []
    reason = "cap reached"
    for n in range(start, cap + 1, step):
        if n > available:
            reason = "outline has only {} points".format(available)
            _logger.warning(
                "Retrieval of '%s' stopped at n = %d: %s", name, n, reason
            )
            break
        sample = sample_uniform(entry.outline, n)
        result = group_surface(sample)
        if len(result.boundary) < MIN_DESCRIPTOR_POINTS:
            steps.append(RetrievalStep(n, len(result.boundary), result.hamiltonian))
            _logger.debug(
                "n = %d skipped: boundary of %d points", n, len(result.boundary)
            )
            continue
        signature = descriptor(sample.points[list(result.boundary)])
        distances = tuple(distance(signature, other) for other in stored)
        nearest_other = min(d for i, d in enumerate(distances) if i != own)
        is_min = distances[own] < nearest_other
        ratio = _margin_ratio(distances[own], nearest_other)
        passed = is_min and ratio > margin
        steps.append(
            RetrievalStep(
                n,
                len(result.boundary),
                result.hamiltonian,
                distances,
                is_min,
                ratio,
                passed,
            )
        )
        _logger.debug(
            "n = %d: own distance %.6g, ratio %.4g, passed=%s",
            n,
            distances[own],
            ratio,
            passed,
        )
        if passed:
            _logger.info("Retrieved '%s' at n = %d", name, n)
            return RetrievalOutcome(name, names, n, tuple(steps), cap)
    _logger.info("Shape '%s' not retrieved: %s", name, reason)
    return RetrievalOutcome(name, names, None, tuple(steps), cap, reason)


@dataclass(frozen=True)
class MMetric:
    method: str
    threshold: float
    m: int = None
    scores: dict = field(default_factory=dict)

    @property
    def succeeded(self):
        return self.m is not None


def m_from_scores(scores, threshold=M_THRESHOLD):
    """Smallest K after which every score stays at or above ``threshold``.

    ``scores`` maps K to the grouping score; None when the score at the
    largest K is already below the threshold.
    """
    m = None
    for k in sorted(scores, reverse=True):
        if scores[k] >= threshold:
            m = k
        else:
            break
    return m


def m_metric(outline, method, threshold=M_THRESHOLD, grid=DEFAULT_GRID):
    scores = {}
    for k in grid:
        sample = sample_uniform(outline, k)
        scores[k] = grouping_score(group(sample, method), sample)
    m = m_from_scores(scores, threshold)
    _logger.debug("m-metric of '%s' (%s): %s", outline.name, method, m)
    return MMetric(method, threshold, m, scores)

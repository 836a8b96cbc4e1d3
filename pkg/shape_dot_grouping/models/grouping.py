# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).
"""Surface-based and contour-based grouping of sampled dots, and the
grouping score that compares a grouping with the ground-truth adjacency."""

import heapq
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.cluster.hierarchy import DisjointSet
from scipy.spatial.distance import pdist

from ..exceptions import BadParameter, EmptySelection, TooFewPoints, ValidationError
from .config_settings import DUPLICATE_TOLERANCE, PREDICATE_EPSILON, STOP_FLATNESS
from .geometry import as_coordinates, delaunay, edge_key

_logger = logging.getLogger(__name__)

SURFACE = "surface"
MST = "mst"
METHODS = (MST, SURFACE)


@dataclass(frozen=True)
class Removal:
    edge: tuple
    opposite: int
    flatness: float


class RemovalQueue:
    """Max-queue of boundary edges.

    Order: flatness descending, then edge length descending, then the
    (min index, max index) pair ascending.
    """

    def __init__(self):
        self._heap = []

    def push(self, edge, flatness, length, opposite):
        i, j = edge_key(*edge)
        heapq.heappush(self._heap, (-flatness, -length, i, j, opposite))

    def pop(self):
        """Return ``(edge, flatness, opposite)`` of the maximum entry."""
        neg_flatness, _neg_length, i, j, opposite = heapq.heappop(self._heap)
        return (i, j), -neg_flatness, opposite

    def __len__(self):
        return len(self._heap)


@dataclass(frozen=True)
class GroupingResult:
    method: str
    k: int
    selected_edges: frozenset
    boundary: tuple = ()
    hamiltonian: bool = False
    removals: tuple = ()

    def to_record(self):
        return {
            "method": self.method,
            "k": self.k,
            "hamiltonian": self.hamiltonian,
            "edges": [list(edge) for edge in sorted(self.selected_edges)],
            "boundary": list(self.boundary),
            "removals": [
                {
                    "edge": list(removal.edge),
                    "opposite": removal.opposite,
                    "flatness": removal.flatness,
                }
                for removal in self.removals
            ],
        }


@dataclass(frozen=True)
class SurfaceTriangulation:
    """What survives of the triangulation once no boundary edge is flat
    enough to peel."""

    k: int
    stop_flatness: float
    triangles: tuple
    boundary: tuple
    removals: tuple

    @property
    def boundary_edges(self):
        count = len(self.boundary)
        return frozenset(
            edge_key(v, self.boundary[(n + 1) % count])
            for n, v in enumerate(self.boundary)
        )

    def as_grouping(self):
        return GroupingResult(
            SURFACE,
            self.k,
            self.boundary_edges,
            self.boundary,
            len(self.boundary) == self.k,
            self.removals,
        )

    def to_record(self):
        record = self.as_grouping().to_record()
        record["stop_flatness"] = (
            self.stop_flatness if math.isfinite(self.stop_flatness) else None
        )
        record["triangles"] = [list(tri) for tri in self.triangles]
        return record


def _peel(graph, stop_flatness=None):
    """Greedily remove outer triangles, flattest boundary edge first.

    Only removable edges enter the queue; with ``stop_flatness`` set,
    only those whose flatness exceeds it.
    """
    queue = RemovalQueue()

    def offer(edge):
        if not graph.is_removable(edge):
            return
        flatness = graph.flatness(edge)
        if stop_flatness is None or flatness > stop_flatness:
            queue.push(
                edge, flatness, graph.edge_length(edge), graph.opposite_vertex(edge)
            )

    for edge in graph.boundary_edges():
        offer(edge)
    removals = []
    stale = 0
    while queue:
        edge, flatness, opposite = queue.pop()
        # entries go stale once their opposite vertex reaches the boundary
        if (
            not graph.is_boundary_edge(edge)
            or graph.opposite_vertex(edge) != opposite
            or not graph.is_removable(edge)
        ):
            stale += 1
            continue
        exposed = graph.remove_triangle(edge)
        removals.append(Removal(edge, opposite, flatness))
        _logger.debug(
            "Removed triangle %s behind edge %s (flatness %.6g)",
            (edge[0], edge[1], opposite),
            edge,
            flatness,
        )
        for new_edge in exposed:
            offer(new_edge)
    _logger.debug("Peeling done: %d removal(s), %d stale entries", len(removals), stale)
    return tuple(removals)


def group_surface(
    points,
    *,
    duplicate_tolerance=DUPLICATE_TOLERANCE,
    epsilon=PREDICATE_EPSILON,
):
    """Group dots by peeling the Delaunay triangulation from the outside.

    ``points`` is a SampledShape or a raw point list. A boundary that does
    not reach every dot is a normal outcome (``hamiltonian`` is False).
    """
    graph = delaunay(points, duplicate_tolerance=duplicate_tolerance, epsilon=epsilon)
    removals = _peel(graph)
    boundary = tuple(graph.boundary_sequence())
    result = GroupingResult(
        SURFACE,
        graph.vertex_count,
        frozenset(graph.boundary_edges()),
        boundary,
        len(boundary) == graph.vertex_count,
        removals,
    )
    _logger.debug(
        "Surface grouping of %d dots: boundary of %d, hamiltonian=%s",
        result.k,
        len(boundary),
        result.hamiltonian,
    )
    return result


def group_surface_thresholded(
    points,
    tau=STOP_FLATNESS,
    *,
    duplicate_tolerance=DUPLICATE_TOLERANCE,
    epsilon=PREDICATE_EPSILON,
):
    """Peel only the boundary edges whose flatness exceeds ``tau``."""
    if math.isnan(tau) or tau < 0:
        raise BadParameter("The stop flatness must be >= 0, got {}.".format(tau))
    graph = delaunay(points, duplicate_tolerance=duplicate_tolerance, epsilon=epsilon)
    removals = _peel(graph, stop_flatness=tau)
    return SurfaceTriangulation(
        graph.vertex_count,
        float(tau),
        tuple(graph.alive_triangles()),
        tuple(graph.boundary_sequence()),
        removals,
    )


def group_mst(points):
    """Kruskal minimum spanning tree of the complete Euclidean graph.

    Equal weights are taken in (min index, max index) order.
    """
    coords = as_coordinates(points)
    count = len(coords)
    if count < 2:
        raise TooFewPoints(
            "At least 2 points are needed for a spanning tree, got {}.".format(count)
        )
    weights = pdist(coords)
    rows, cols = np.triu_indices(count, k=1)
    order = np.lexsort((cols, rows, weights))
    components = DisjointSet(range(count))
    selected = []
    for n in order:
        i, j = int(rows[n]), int(cols[n])
        if components.merge(i, j):
            selected.append((i, j))
            if len(selected) == count - 1:
                break
    return GroupingResult(MST, count, frozenset(selected))


def group(points, method):
    if method == SURFACE:
        return group_surface(points)
    if method == MST:
        return group_mst(points)
    raise BadParameter(
        "Unknown grouping method '{}'; choose one of {}.".format(
            method, ", ".join(METHODS)
        )
    )


def grouping_score(result, truth):
    """Fraction of the selected edges that belong to the ground truth."""
    if truth.truth_edges is None:
        raise BadParameter(
            "Point set '{}' carries no ground truth.".format(truth.source)
        )
    selected = result.selected_edges
    if not selected:
        raise EmptySelection("The grouping selected no edge.")
    if any(j >= truth.k for _i, j in selected):
        raise ValidationError(
            "The grouping references points beyond the {} of '{}'.".format(
                truth.k, truth.source
            )
        )
    return len(selected & truth.truth_edges) / len(selected)

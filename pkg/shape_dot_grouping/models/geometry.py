# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).
"""Planar kernel: points, tolerant predicates and the boundary-aware
triangulated graph that the surface grouping peels."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import Delaunay, QhullError, cKDTree

from ..exceptions import (
    DegenerateInput,
    DuplicatePoints,
    NotBoundaryEdge,
    NotRemovable,
    TooFewPoints,
    ValidationError,
)
from .config_settings import (
    COCIRCULAR_TOLERANCE,
    DUPLICATE_TOLERANCE,
    PREDICATE_EPSILON,
)

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValidationError(
                "Point ({}, {}) has a non finite coordinate.".format(self.x, self.y)
            )

    def __iter__(self):
        yield self.x
        yield self.y


def as_coordinates(points):
    """Return ``points`` as a validated K x 2 float array.

    Accepts Point2 lists, (x, y) pairs, arrays, or any object carrying a
    ``points`` attribute (dense outlines, sampled shapes).
    """
    points = getattr(points, "points", points)
    if isinstance(points, np.ndarray):
        coords = np.array(points, dtype=float)
    else:
        coords = np.array([tuple(p) for p in points], dtype=float)
    if coords.size == 0:
        coords = coords.reshape(0, 2)
    if coords.ndim != 2 or coords.shape[1] != 2:
        raise ValidationError("Points must be given as (x, y) pairs.")
    if not np.all(np.isfinite(coords)):
        raise ValidationError("Points must have finite coordinates.")
    return coords


def edge_key(i, j):
    return (i, j) if i < j else (j, i)


def orientation(a, b, c):
    """Cross product of (b - a, c - a) divided by the two lengths.

    Positive for a counterclockwise turn; the value is the sine of the
    angle at ``a`` so a fixed epsilon applies at any scale.
    """
    abx, aby = b[0] - a[0], b[1] - a[1]
    acx, acy = c[0] - a[0], c[1] - a[1]
    scale = math.hypot(abx, aby) * math.hypot(acx, acy)
    if not scale:
        return 0.0
    return (abx * acy - aby * acx) / scale


def incircle(a, b, c, d):
    """In-circle determinant of ``d`` against the counterclockwise triangle
    ``abc``, divided by the squared largest lifted distance.

    Positive when ``d`` lies strictly inside the circumcircle.
    """
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (
        alift * (bdx * cdy - bdy * cdx)
        + blift * (cdx * ady - cdy * adx)
        + clift * (adx * bdy - ady * bdx)
    )
    scale = max(alift, blift, clift) ** 2
    if not scale:
        return 0.0
    return det / scale


def _sides(triangle):
    a, b, c = triangle
    return ((a, b), (b, c), (c, a))


def _third(triangle, i, j):
    for v in triangle:
        if v != i and v != j:
            return v
    raise ValidationError("Triangle {} is degenerate.".format(triangle))


def _runs_forward(triangle, i, j):
    """True when the counterclockwise triangle has the directed side i -> j."""
    return (i, j) in _sides(triangle)


def _canonical(triangle):
    """Rotate a counterclockwise triangle so that it starts at its lowest index."""
    a, b, c = triangle
    if b < a and b < c:
        return (b, c, a)
    if c < a and c < b:
        return (c, a, b)
    return triangle


def _is_flat(coords, triangle, epsilon):
    a, b, c = (coords[v] for v in triangle)
    return abs(orientation(a, b, c)) <= epsilon


def _resolve_flat(coords, simplices, epsilon):
    """Drop the zero-area simplices Qhull emits around collinear points.

    A flat triangle is removed and the neighbour across its longest side
    is split at the middle vertex. Without a neighbour the longest side
    was on the hull and the middle vertex simply joins the boundary.
    """
    tris = []
    owners = {}

    def add(tri):
        tris.append(tri)
        for a, b in _sides(tri):
            owners.setdefault(edge_key(a, b), set()).add(len(tris) - 1)
        return len(tris) - 1

    def kill(t):
        for a, b in _sides(tris[t]):
            key = edge_key(a, b)
            owners[key].discard(t)
            if not owners[key]:
                del owners[key]
        tris[t] = None

    for simplex in simplices:
        add(tuple(int(v) for v in simplex))
    pending = [t for t, tri in enumerate(tris) if _is_flat(coords, tri, epsilon)]
    budget = 2 * len(tris) + 8
    resolved = 0
    while pending:
        t = pending.pop()
        if tris[t] is None:
            continue
        if resolved == budget:
            raise DegenerateInput(
                "Could not resolve the zero-area triangles of the triangulation."
            )
        a, c = max(_sides(tris[t]), key=lambda s: math.dist(coords[s[0]], coords[s[1]]))
        b = _third(tris[t], a, c)
        kill(t)
        for u in sorted(owners.get(edge_key(a, c), ())):
            d = _third(tris[u], a, c)
            kill(u)
            for tri in ((a, b, d), (b, c, d)):
                n = add(tri)
                if _is_flat(coords, tri, epsilon):
                    pending.append(n)
        resolved += 1
    if resolved:
        _logger.debug("Resolved %d zero-area triangle(s)", resolved)
    return [tri for tri in tris if tri is not None]


def _legalize(coords, triangles, epsilon):
    """Flip diagonals until every interior edge is locally Delaunay.

    A diagonal whose quadrilateral is cocircular within ``epsilon`` is
    replaced when the other diagonal has the lexicographically smaller
    (min, max) index pair, so a fully cocircular set ends as the fan from
    its lowest index.
    """
    tris = list(triangles)
    owners = {}
    for t, tri in enumerate(tris):
        for a, b in _sides(tri):
            owners.setdefault(edge_key(a, b), []).append(t)
    stack = sorted((e for e, ts in owners.items() if len(ts) == 2), reverse=True)
    flips = 0
    while stack:
        edge = stack.pop()
        ts = owners.get(edge)
        if not ts or len(ts) != 2:
            continue
        t1, t2 = ts
        i, j = edge
        if not _runs_forward(tris[t1], i, j):
            t1, t2 = t2, t1
        c = _third(tris[t1], i, j)
        d = _third(tris[t2], i, j)
        diagonal = edge_key(c, d)
        if diagonal in owners:
            continue
        pi, pj, pc, pd = coords[i], coords[j], coords[c], coords[d]
        score = incircle(pi, pj, pc, pd)
        if score < -epsilon or (score <= epsilon and diagonal >= edge):
            continue
        if orientation(pc, pd, pi) >= -epsilon or orientation(pc, pd, pj) <= epsilon:
            # not a strictly convex quadrilateral
            continue
        tris[t1] = (i, d, c)
        tris[t2] = (d, j, c)
        del owners[edge]
        owners[diagonal] = [t1, t2]
        owners[edge_key(j, c)] = [t2 if t == t1 else t for t in owners[edge_key(j, c)]]
        owners[edge_key(i, d)] = [t1 if t == t2 else t for t in owners[edge_key(i, d)]]
        stack.extend(
            [edge_key(i, c), edge_key(j, c), edge_key(i, d), edge_key(j, d)]
        )
        flips += 1
    if flips:
        _logger.debug("Flipped %d diagonal(s)", flips)
    return tris


def _cocircular_fan(coords, tolerance):
    """Fan from vertex 0 when all points lie on one circle, else None.

    The circle is a least squares fit; the points count as cocircular
    when their radii spread by at most ``tolerance`` times the radius.
    """
    shifted = coords - coords.mean(axis=0)
    x, y = shifted[:, 0], shifted[:, 1]
    system = np.column_stack([2 * x, 2 * y, np.ones(len(shifted))])
    solution = np.linalg.lstsq(system, x * x + y * y, rcond=None)[0]
    cx, cy = solution[0], solution[1]
    radii = np.hypot(x - cx, y - cy)
    radius = float(np.mean(radii))
    if not radius or float(np.ptp(radii)) > tolerance * radius:
        return None
    order = np.argsort(np.arctan2(y - cy, x - cx), kind="stable")
    order = np.roll(order, -int(np.flatnonzero(order == 0)[0]))
    return [
        (0, int(order[n]), int(order[n + 1])) for n in range(1, len(order) - 1)
    ]


def delaunay(
    points,
    *,
    duplicate_tolerance=DUPLICATE_TOLERANCE,
    epsilon=PREDICATE_EPSILON,
    cocircular_tolerance=COCIRCULAR_TOLERANCE,
):
    """Delaunay triangulation of ``points`` as a TriangulatedGraph.

    The boundary of the result is the convex hull, collinear hull points
    included. Output is deterministic for a given input order, cocircular
    ties included; a set lying on one circle is the fan from vertex 0.
    """
    coords = as_coordinates(points)
    count = len(coords)
    if count < 3:
        raise TooFewPoints(
            "At least 3 points are needed to triangulate, got {}.".format(count)
        )
    tree = cKDTree(coords)
    close = sorted(
        (i, j)
        for i, j in tree.query_pairs(duplicate_tolerance)
        if math.dist(coords[i], coords[j]) < duplicate_tolerance
    )
    if close:
        i, j = close[0]
        raise DuplicatePoints(
            "Points {} and {} are closer than {:g} ({} duplicate pair(s)).".format(
                i, j, duplicate_tolerance, len(close)
            )
        )
    offsets = coords - coords[0]
    far = offsets[int(np.argmax(np.einsum("ij,ij->i", offsets, offsets)))]
    cross = far[0] * offsets[:, 1] - far[1] * offsets[:, 0]
    if np.max(np.abs(cross)) <= epsilon * float(far @ far):
        raise DegenerateInput("All {} points are collinear.".format(count))
    triangles = _cocircular_fan(coords, cocircular_tolerance)
    if triangles is not None:
        triangles.sort()
    else:
        triangles = _qhull_triangles(coords, epsilon)
    graph = TriangulatedGraph(coords, triangles)
    _logger.debug(
        "Triangulated %d points: %d triangles, %d hull vertices",
        count,
        len(triangles),
        graph.hull_size,
    )
    return graph


def _qhull_triangles(coords, epsilon):
    try:
        qhull = Delaunay(coords)
    except QhullError as err:
        raise DegenerateInput("Qhull could not triangulate: {}".format(err)) from err
    if len(qhull.coplanar):
        dropped = sorted(int(v) for v in qhull.coplanar[:, 0])
        raise DegenerateInput(
            "Point(s) {} were left out of the triangulation.".format(dropped)
        )
    triangles = []
    for a, b, c in _resolve_flat(coords, qhull.simplices, epsilon):
        turn = orientation(coords[a], coords[b], coords[c])
        if abs(turn) <= epsilon:
            raise DegenerateInput(
                "Triangle ({}, {}, {}) has zero area.".format(a, b, c)
            )
        if turn < 0:
            b, c = c, b
        triangles.append(_canonical((a, b, c)))
    triangles.sort()
    return sorted(_canonical(tri) for tri in _legalize(coords, triangles, epsilon))


class TriangulatedGraph:
    """Mutable triangulation whose outer triangles can be peeled off.

    Every alive edge is owned by one (boundary) or two (interior) alive
    triangles. Boundary edges are kept as a successor map that walks the
    boundary counterclockwise, so the boundary stays a single simple cycle
    as long as only triangles behind a removable edge are taken away.
    Single owner: nothing here is safe under concurrent mutation.
    """

    def __init__(self, coords, triangles):
        self._coords = np.array(coords, dtype=float)
        self._coords.setflags(write=False)
        self._triangles = [tuple(int(v) for v in tri) for tri in triangles]
        self._alive = [True] * len(self._triangles)
        self._edge_table = {}
        for t, tri in enumerate(self._triangles):
            for a, b in _sides(tri):
                self._edge_table.setdefault(edge_key(a, b), []).append(t)
        self._next = {}
        for edge, owners in self._edge_table.items():
            if len(owners) > 2:
                raise ValidationError(
                    "Edge {} is shared by {} triangles.".format(edge, len(owners))
                )
            if len(owners) == 1:
                tri = self._triangles[owners[0]]
                a, b = edge if _runs_forward(tri, *edge) else edge[::-1]
                if a in self._next:
                    raise ValidationError(
                        "The boundary touches vertex {} twice.".format(a)
                    )
                self._next[a] = b
        self._boundary_flags = [False] * len(self._coords)
        for v in self._next:
            self._boundary_flags[v] = True
        self.hull_size = len(self._next)
        self.removed_count = 0
        self.boundary_sequence()

    # Read-only views

    @property
    def points(self):
        return self._coords

    @property
    def vertices(self):
        return [Point2(float(x), float(y)) for x, y in self._coords]

    @property
    def vertex_count(self):
        return len(self._coords)

    @property
    def boundary_flags(self):
        return tuple(self._boundary_flags)

    def alive_triangles(self):
        return [tri for tri, alive in zip(self._triangles, self._alive) if alive]

    def alive_edges(self):
        return sorted(self._edge_table)

    def edge_owners(self, edge):
        return len(self._edge_table.get(edge_key(*edge), ()))

    def is_boundary_edge(self, edge):
        return self.edge_owners(edge) == 1

    def is_boundary_vertex(self, vertex):
        return self._boundary_flags[vertex]

    def boundary_edges(self):
        sequence = self.boundary_sequence()
        return [
            edge_key(v, sequence[(n + 1) % len(sequence)])
            for n, v in enumerate(sequence)
        ]

    def edge_length(self, edge):
        i, j = edge
        return math.dist(self._coords[i], self._coords[j])

    def _boundary_triangle(self, edge):
        owners = self._edge_table.get(edge_key(*edge))
        if not owners or len(owners) != 1:
            raise NotBoundaryEdge(
                "Edge {} is not on the current boundary.".format(tuple(edge))
            )
        return owners[0]

    def opposite_vertex(self, edge):
        i, j = edge
        return _third(self._triangles[self._boundary_triangle(edge)], i, j)

    # Peeling operations

    def flatness(self, edge):
        """Edge length minus the shortest side of the associated triangle."""
        x, y = edge
        z = self.opposite_vertex(edge)
        coords = self._coords
        side = math.dist(coords[x], coords[y])
        shortest = min(
            side, math.dist(coords[x], coords[z]), math.dist(coords[y], coords[z])
        )
        return side - shortest

    def is_removable(self, edge):
        return not self._boundary_flags[self.opposite_vertex(edge)]

    def remove_triangle(self, edge):
        """Remove the triangle behind a removable boundary edge.

        Returns the two exposed boundary edges ``(x, xy)`` and ``(y, xy)``.
        """
        x, y = edge
        t = self._boundary_triangle(edge)
        tri = self._triangles[t]
        z = _third(tri, x, y)
        if self._boundary_flags[z]:
            raise NotRemovable(
                "Edge {} cannot be removed: its opposite vertex {} is already "
                "on the boundary.".format((x, y), z)
            )
        a, b = (x, y) if _runs_forward(tri, x, y) else (y, x)
        self._alive[t] = False
        del self._edge_table[edge_key(a, b)]
        self._edge_table[edge_key(a, z)].remove(t)
        self._edge_table[edge_key(b, z)].remove(t)
        self._next[a] = z
        self._next[z] = b
        self._boundary_flags[z] = True
        self.removed_count += 1
        return edge_key(x, z), edge_key(y, z)

    def boundary_sequence(self):
        """Boundary vertices counterclockwise, starting at the lowest index."""
        start = min(self._next)
        sequence = [start]
        vertex = self._next[start]
        while vertex != start:
            sequence.append(vertex)
            if len(sequence) > len(self._next):
                raise ValidationError("The boundary is not a simple cycle.")
            vertex = self._next[vertex]
        if len(sequence) != len(self._next):
            raise ValidationError("The boundary is not a single cycle.")
        return sequence

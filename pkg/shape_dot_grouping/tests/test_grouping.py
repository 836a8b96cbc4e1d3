# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

import math
import statistics
import time
import unittest

import numpy as np

from ..exceptions import BadParameter, DegenerateInput, EmptySelection, TooFewPoints
from ..models.geometry import delaunay
from ..models.grouping import (
    MST,
    SURFACE,
    GroupingResult,
    RemovalQueue,
    group,
    group_mst,
    group_surface,
    group_surface_thresholded,
    grouping_score,
)
from ..models.shapes import SampledShape, builtin_shape, sample_uniform


def prim_weight(coords):
    """Independent O(K^2) Prim oracle for the spanning tree weight."""
    count = len(coords)
    in_tree = [False] * count
    best = [math.inf] * count
    best[0] = 0.0
    total = 0.0
    for _ in range(count):
        u = min((v for v in range(count) if not in_tree[v]), key=lambda v: best[v])
        in_tree[u] = True
        total += best[u]
        for v in range(count):
            if not in_tree[v]:
                best[v] = min(best[v], math.dist(coords[u], coords[v]))
    return total


def cycle_walk(edges, count):
    """Vertices visited by walking the selected edges from vertex 0."""
    neighbours = {v: [] for v in range(count)}
    for i, j in edges:
        neighbours[i].append(j)
        neighbours[j].append(i)
    previous, vertex, seen = None, 0, [0]
    while True:
        nxt = [v for v in neighbours[vertex] if v != previous][0]
        if nxt == 0:
            return seen
        seen.append(nxt)
        previous, vertex = vertex, nxt


class TestRemovalQueue(unittest.TestCase):
    def test_total_order(self):
        queue = RemovalQueue()
        queue.push((3, 4), 1.0, 5.0, 9)
        queue.push((5, 1), 2.0, 1.0, 9)
        queue.push((0, 7), 1.0, 6.0, 9)
        queue.push((2, 6), 1.0, 6.0, 9)
        self.assertEqual(len(queue), 4)
        popped = [queue.pop()[0] for _ in range(4)]
        self.assertEqual(popped, [(1, 5), (0, 7), (2, 6), (3, 4)])
        self.assertFalse(queue)


class TestSurfaceGrouping(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        kinds = ("circle", "ellipse", "square", "star5")
        cls.outlines = {kind: builtin_shape(kind) for kind in kinds}
        cls.star = cls.outlines["star5"]

    def test_convex_position(self):
        shape = sample_uniform(self.outlines["circle"], 30)
        result = group_surface(shape)
        self.assertEqual(result.removals, ())
        self.assertTrue(result.hamiltonian)
        self.assertEqual(len(result.boundary), 30)
        self.assertEqual(result.selected_edges, shape.truth_edges)

    def test_hamiltonian_on_builtins(self):
        for kind, outline in self.outlines.items():
            for k in range(20, 101, 10):
                shape = sample_uniform(outline, k)
                result = group_surface(shape)
                self.assertTrue(result.hamiltonian, (kind, k))
                self.assertEqual(grouping_score(result, shape), 1.0, (kind, k))

    def test_star_recovered_at_k50(self):
        shape = sample_uniform(self.star, 50)
        result = group_surface(shape)
        self.assertTrue(result.hamiltonian)
        self.assertEqual(grouping_score(result, shape), 1.0)
        self.assertEqual(sorted(cycle_walk(result.selected_edges, 50)), list(range(50)))
        self.assertGreater(len(result.removals), 0)
        walk = result.boundary
        start = walk.index(0)
        rotated = walk[start:] + walk[:start]
        self.assertIn(
            list(rotated), [list(range(50)), [0] + list(range(49, 0, -1))]
        )

    def test_star_boundary_flattens_with_density(self):
        def worst_adjacent_flatness(k):
            shape = sample_uniform(self.star, k)
            graph = delaunay(shape)
            for removal in group_surface(shape).removals:
                graph.remove_triangle(removal.edge)
            return max(
                graph.flatness(edge)
                for edge in graph.boundary_edges()
                if edge in shape.truth_edges
            )

        sparse, dense = worst_adjacent_flatness(100), worst_adjacent_flatness(400)
        self.assertLess(dense, 0.5 * sparse)

    def test_comb_at_every_k(self):
        outline = builtin_shape("comb")
        for k in range(3, 401):
            shape = sample_uniform(outline, k)
            try:
                result = group_surface(shape)
            except DegenerateInput as err:
                self.assertIn("collinear", str(err), k)
                continue
            graph = delaunay(shape)
            h = graph.hull_size
            self.assertEqual(len(graph.alive_triangles()), 2 * k - h - 2, k)
            self.assertEqual(len(graph.alive_edges()), 3 * k - h - 3, k)
            self.assertEqual(len(result.boundary), h + len(result.removals), k)

    def test_surface_beats_mst_on_the_grid(self):
        kinds = ("star5", "L", "U", "comb", "ellipse")
        outlines = [builtin_shape(kind) for kind in kinds]
        strict = 0
        for k in range(30, 201, 10):
            samples = [sample_uniform(outline, k) for outline in outlines]
            means = {
                method: statistics.mean(
                    grouping_score(group(shape, method), shape) for shape in samples
                )
                for method in (SURFACE, MST)
            }
            self.assertGreaterEqual(means[SURFACE], means[MST], k)
            strict += means[SURFACE] > means[MST]
        self.assertGreaterEqual(strict, 15)

    def test_removal_invariants(self):
        rng = np.random.default_rng(3)
        coords = rng.uniform(0, 512, size=(60, 2))
        hull = delaunay(coords).hull_size
        result = group_surface(coords)
        self.assertEqual(len(result.boundary), hull + len(result.removals))
        self.assertLessEqual(len(result.removals), 60 - hull)
        self.assertEqual(len(set(result.boundary)), len(result.boundary))
        self.assertEqual(len(result.selected_edges), len(result.boundary))
        self.assertEqual(result.hamiltonian, len(result.boundary) == 60)
        self.assertTrue(all(r.flatness >= 0 for r in result.removals))
        self.assertEqual(result, group_surface(coords.copy()))

    def test_record(self):
        result = group_surface([(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)])
        record = result.to_record()
        self.assertEqual(record["method"], "surface")
        self.assertEqual(record["k"], 5)
        self.assertTrue(record["hamiltonian"])
        self.assertEqual(record["boundary"], [0, 4, 1, 2, 3])
        self.assertEqual(record["removals"][0]["edge"], [0, 1])
        self.assertEqual(record["removals"][0]["opposite"], 4)
        self.assertAlmostEqual(record["removals"][0]["flatness"], 2 - math.sqrt(2))


class TestThresholdedGrouping(unittest.TestCase):
    def test_infinite_threshold_keeps_the_triangulation(self):
        rng = np.random.default_rng(11)
        coords = rng.uniform(0, 512, size=(40, 2))
        surface = group_surface_thresholded(coords, math.inf)
        self.assertEqual(surface.removals, ())
        self.assertEqual(list(surface.triangles), delaunay(coords).alive_triangles())
        self.assertIsNone(surface.to_record()["stop_flatness"])

    def test_zero_threshold_matches_surface_grouping(self):
        points = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]
        surface = group_surface_thresholded(points, 0.0)
        self.assertEqual(surface.removals, group_surface(points).removals)
        self.assertEqual(surface.as_grouping(), group_surface(points))

    def test_zero_threshold_on_star(self):
        shape = sample_uniform(builtin_shape("star5"), 50)
        full = group_surface(shape)
        if not all(removal.flatness > 0 for removal in full.removals):
            self.skipTest("trace holds a zero flatness removal")
        surface = group_surface_thresholded(shape, 0.0)
        self.assertEqual(surface.removals, full.removals)
        self.assertEqual(surface.as_grouping().selected_edges, full.selected_edges)

    def test_threshold_above_flatness_stops_peeling(self):
        points = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]
        surface = group_surface_thresholded(points, 1.0)
        self.assertEqual(surface.removals, ())
        self.assertEqual(len(surface.triangles), 4)

    def test_illusory_triangle(self):
        clusters = []
        for cx, cy in ((100, 100), (412, 100), (256, 370)):
            # a disc of dots with a wedge facing the middle left out
            facing = math.atan2(200 - cy, 256 - cx)
            for ring, count in ((30, 10), (55, 16)):
                for n in range(count):
                    angle = facing + 0.6 + (2 * math.pi - 1.2) * n / (count - 1)
                    x, y = cx + ring * math.cos(angle), cy + ring * math.sin(angle)
                    clusters.append((x, y))
        surface = group_surface_thresholded(clusters, 5.0)
        full = delaunay(clusters).alive_triangles()
        self.assertLessEqual(len(surface.triangles), len(full))
        by_edge = {}
        for t, tri in enumerate(surface.triangles):
            for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])):
                by_edge.setdefault((min(a, b), max(a, b)), []).append(t)
        reached, stack = {0}, [0]
        while stack:
            t = stack.pop()
            tri = surface.triangles[t]
            for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])):
                for other in by_edge[(min(a, b), max(a, b))]:
                    if other not in reached:
                        reached.add(other)
                        stack.append(other)
        self.assertEqual(len(reached), len(surface.triangles))
        covered = {v for tri in surface.triangles for v in tri}
        self.assertEqual(covered, set(range(len(clusters))))

    def test_negative_threshold(self):
        with self.assertRaises(BadParameter):
            group_surface_thresholded([(0, 0), (1, 0), (0, 1)], -1.0)


class TestMst(unittest.TestCase):
    def test_unique_tree(self):
        result = group_mst([(0, 0), (1, 0), (1.125, math.sqrt(0.984375))])
        self.assertEqual(result.selected_edges, frozenset({(0, 1), (1, 2)}))
        self.assertEqual(result.method, "mst")
        self.assertFalse(result.hamiltonian)
        self.assertEqual(result.boundary, ())

    def test_collinear_chain(self):
        result = group_mst([(0, 0), (1, 0), (2, 0), (3, 0)])
        self.assertEqual(result.selected_edges, frozenset({(0, 1), (1, 2), (2, 3)}))

    def test_equal_weights_follow_index_order(self):
        result = group_mst([(0, 0), (1, 0), (1, 1), (0, 1)])
        self.assertEqual(result.selected_edges, frozenset({(0, 1), (0, 3), (1, 2)}))

    def test_octagon(self):
        angles = 2 * math.pi * np.arange(8) / 8
        points = np.column_stack([np.cos(angles), np.sin(angles)]) * 100
        shape = SampledShape("octagon", 8, points, [(i, (i + 1) % 8) for i in range(8)])
        result = group_mst(shape)
        self.assertEqual(len(result.selected_edges), 7)
        self.assertEqual(grouping_score(result, shape), 1.0)

    def test_weight_matches_prim(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            coords = rng.uniform(0, 100, size=(int(rng.integers(2, 9)), 2))
            result = group_mst(coords)
            self.assertEqual(len(result.selected_edges), len(coords) - 1)
            weight = sum(
                math.dist(coords[i], coords[j]) for i, j in result.selected_edges
            )
            self.assertAlmostEqual(weight, prim_weight(coords), places=9)

    def test_too_few_points(self):
        with self.assertRaises(TooFewPoints):
            group_mst([(0, 0)])


class TestGroupingScore(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.shape = SampledShape(
            "square",
            4,
            [(0, 0), (1, 0), (1, 1), (0, 1)],
            [(0, 1), (1, 2), (2, 3), (3, 0)],
        )

    def test_scores(self):
        full = GroupingResult("surface", 4, self.shape.truth_edges)
        self.assertEqual(grouping_score(full, self.shape), 1.0)
        diagonals = GroupingResult("surface", 4, frozenset({(0, 2), (1, 3)}))
        self.assertEqual(grouping_score(diagonals, self.shape), 0.0)
        half = GroupingResult("mst", 4, frozenset({(0, 1), (0, 2)}))
        self.assertEqual(grouping_score(half, self.shape), 0.5)
        tree = GroupingResult("mst", 4, frozenset({(0, 1), (1, 2), (2, 3)}))
        self.assertEqual(grouping_score(tree, self.shape), 1.0)

    def test_errors(self):
        with self.assertRaises(EmptySelection):
            grouping_score(GroupingResult("mst", 4, frozenset()), self.shape)
        raw = SampledShape.from_points([(0, 0), (1, 0), (0, 1)])
        with self.assertRaises(BadParameter):
            grouping_score(group_mst(raw), raw)

    def test_dispatch(self):
        self.assertEqual(group(self.shape, "mst"), group_mst(self.shape))
        with self.assertRaises(BadParameter):
            group(self.shape, "spectral")


class TestRuntime(unittest.TestCase):
    @staticmethod
    def median_seconds(func, shape, runs=5):
        func(shape)
        timings = []
        for _ in range(runs):
            start = time.perf_counter()
            func(shape)
            timings.append(time.perf_counter() - start)
        return statistics.median(timings)

    def test_surface_grouping_on_circles_scales(self):
        outline = builtin_shape("circle", 2000)
        small = self.median_seconds(group_surface, sample_uniform(outline, 1000))
        large = self.median_seconds(group_surface, sample_uniform(outline, 2000))
        self.assertLess(large / small, 2.5)

    def test_mst_at_k1000(self):
        shape = sample_uniform(builtin_shape("ellipse", 1000), 1000)
        self.assertLess(self.median_seconds(group_mst, shape, runs=1), 30.0)

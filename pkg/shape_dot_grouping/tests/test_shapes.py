# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

import itertools
import json
import math
import os
import tempfile
import unittest

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from ..exceptions import (
    BadParameter,
    DuplicateName,
    KExceedsOutline,
    KTooSmall,
    MalformedFile,
    UnknownShape,
    ValidationError,
)
from ..models.shapes import (
    BUILTIN_KINDS,
    DenseOutline,
    SampledShape,
    ShapeDb,
    builtin_db,
    builtin_shape,
    cycle_edges,
    load_db,
    load_outline,
    load_point_set,
    sample_uniform,
    save_db,
    save_point_set,
)


def circle_outline(count, name="ring"):
    angles = 2 * math.pi * np.arange(count) / count
    return DenseOutline(
        name, np.column_stack([256 + 100 * np.cos(angles), 256 + 100 * np.sin(angles)])
    )


def segments_cross(p1, p2, q1, q2):
    def turn(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    return (
        turn(p1, p2, q1) * turn(p1, p2, q2) < 0
        and turn(q1, q2, p1) * turn(q1, q2, p2) < 0
    )


def is_simple(points):
    """Brute force: no two non-adjacent sides properly cross."""
    count = len(points)
    for i, j in itertools.combinations(range(count), 2):
        if j == i + 1 or (i == 0 and j == count - 1):
            continue
        if segments_cross(
            points[i], points[(i + 1) % count], points[j], points[(j + 1) % count]
        ):
            return False
    return True


class TestSampling(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.outline = circle_outline(100)

    def test_exact_division(self):
        shape = sample_uniform(self.outline, 10)
        np.testing.assert_array_equal(
            shape.points, self.outline.points[np.arange(0, 100, 10)]
        )
        self.assertEqual(shape.source, "ring")
        self.assertEqual(shape.k, 10)

    def test_floor_indices(self):
        shape = sample_uniform(self.outline, 7)
        np.testing.assert_array_equal(
            shape.points, self.outline.points[[0, 14, 28, 42, 57, 71, 85]]
        )

    def test_identity_sampling(self):
        shape = sample_uniform(self.outline, 100)
        np.testing.assert_array_equal(shape.points, self.outline.points)
        self.assertEqual(shape.truth_edges, cycle_edges(100))

    def test_truth_edges_form_one_cycle(self):
        for k in (3, 10, 37):
            edges = sample_uniform(self.outline, k).truth_edges
            self.assertEqual(len(edges), k)
            degrees = np.zeros(k, dtype=int)
            components = DisjointSet(range(k))
            for i, j in edges:
                degrees[i] += 1
                degrees[j] += 1
                components.merge(i, j)
            self.assertTrue(np.all(degrees == 2))
            self.assertEqual(components.n_subsets, 1)

    def test_k_bounds(self):
        with self.assertRaises(KTooSmall):
            sample_uniform(self.outline, 2)
        with self.assertRaises(KExceedsOutline):
            sample_uniform(self.outline, 101)

    def test_sampled_shape_checks(self):
        with self.assertRaises(ValidationError):
            SampledShape("x", 4, [(0, 0), (1, 0), (0, 1)])
        with self.assertRaises(ValidationError):
            SampledShape("x", 3, [(0, 0), (1, 0), (0, 1)], [(0, 3)])
        raw = SampledShape.from_points([(0, 0), (1, 0), (0, 1)])
        self.assertIsNone(raw.truth_edges)


class TestDenseOutline(unittest.TestCase):
    def test_invariants(self):
        with self.assertRaises(ValidationError):
            DenseOutline("bowtie", [(0, 0), (10, 10), (10, 0), (0, 10)])
        with self.assertRaises(ValidationError):
            DenseOutline("repeat", [(0, 0), (10, 0), (10, 0), (0, 10)])
        with self.assertRaises(ValidationError):
            DenseOutline("wrap", [(0, 0), (10, 0), (0, 10), (0, 0)])
        with self.assertRaises(ValidationError):
            DenseOutline("", [(0, 0), (10, 0), (0, 10)])

    def test_sparse_outline_is_accepted_with_a_warning(self):
        with self.assertLogs("shape_dot_grouping.models.shapes", level="WARNING"):
            outline = DenseOutline("tri", [(0, 0), (10, 0), (0, 10)])
        self.assertEqual(len(outline), 3)


class TestBuiltins(unittest.TestCase):
    def test_circle(self):
        outline = builtin_shape("circle", 360)
        self.assertEqual(len(outline.points), 360)
        radii = np.hypot(outline.points[:, 0] - 256, outline.points[:, 1] - 256)
        np.testing.assert_allclose(radii, 200.0)

    def test_star(self):
        outline = builtin_shape("star5", 400)
        radii = np.hypot(outline.points[:, 0] - 256, outline.points[:, 1] - 256)
        self.assertAlmostEqual(radii.max(), 200.0)
        self.assertAlmostEqual(radii[0], 200.0)
        self.assertGreater(radii.min(), 50.0)

    def test_u_and_every_family_is_simple(self):
        self.assertEqual(len(builtin_shape("U", 300).points), 300)
        for kind in BUILTIN_KINDS:
            outline = builtin_shape(kind, 120)
            self.assertEqual(outline.name, kind)
            self.assertTrue(is_simple(outline.points), kind)
            self.assertTrue(np.all(outline.points >= 0))
            self.assertTrue(np.all(outline.points <= 512))

    def test_deterministic(self):
        for kind in BUILTIN_KINDS:
            np.testing.assert_array_equal(
                builtin_shape(kind, 200).points, builtin_shape(kind, 200).points
            )

    def test_bad_parameters(self):
        with self.assertRaises(BadParameter):
            builtin_shape("hexagon", 100)
        with self.assertRaises(BadParameter):
            builtin_shape("circle", 49)

    def test_load_outline_builtin(self):
        outline = load_outline("builtin:square", 200)
        self.assertEqual(outline.name, "square")
        self.assertEqual(len(outline.points), 200)


class TestShapeDb(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.db = builtin_db(("circle", "L", "star5"), 240)

    def test_names_in_order(self):
        self.assertEqual(self.db.names, ["L", "circle", "star5"])
        self.assertIn("circle", self.db)
        self.assertEqual(len(self.db), 3)
        with self.assertRaises(UnknownShape):
            self.db.get("camel")
        with self.assertRaises(DuplicateName):
            self.db.add(builtin_shape("circle", 100))

    def test_round_trip(self):
        with tempfile.TemporaryDirectory() as directory:
            save_db(self.db, directory)
            self.assertEqual(
                sorted(os.listdir(directory)), ["L.json", "circle.json", "star5.json"]
            )
            loaded = load_db(directory)
        self.assertEqual(loaded.names, self.db.names)
        for original, copy in zip(self.db, loaded):
            np.testing.assert_array_equal(original.outline.points, copy.outline.points)
            self.assertEqual(original.descriptor, copy.descriptor)

    def test_empty_directory(self):
        with tempfile.TemporaryDirectory() as directory:
            self.assertEqual(len(load_db(directory)), 0)

    def test_missing_directory(self):
        with self.assertRaises(OSError):
            load_db("/nonexistent/shape/db")

    def test_descriptor_is_computed_when_absent(self):
        with tempfile.TemporaryDirectory() as directory:
            points = builtin_shape("ellipse", 100).points.tolist()
            with open(os.path.join(directory, "e.json"), "w") as handle:
                json.dump({"name": "ellipse", "points": points}, handle)
            db = load_db(directory)
        self.assertEqual(len(db.get("ellipse").descriptor), 10)

    def test_malformed_files(self):
        bad_contents = [
            {"name": "bowtie", "points": [[0, 0], [10, 10], [10, 0], [0, 10]]},
            {"name": "", "points": [[0, 0], [10, 0], [0, 10]]},
            {"name": "short", "points": [[0, 0], [10, 0], [0, 10]], "descriptor": [1]},
            {"name": "few", "points": [[0, 0], [10, 0], [0, 10]]},
            ["not", "an", "object"],
        ]
        for content in bad_contents:
            with tempfile.TemporaryDirectory() as directory:
                with open(os.path.join(directory, "bad.json"), "w") as handle:
                    json.dump(content, handle)
                with self.assertRaises(MalformedFile):
                    load_db(directory)
        with tempfile.TemporaryDirectory() as directory:
            with open(os.path.join(directory, "bad.json"), "w") as handle:
                handle.write("{not json")
            with self.assertRaises(MalformedFile):
                load_db(directory)

    def test_duplicate_names_on_disk(self):
        record = {"name": "same", "points": circle_outline(60).points.tolist()}
        with tempfile.TemporaryDirectory() as directory:
            for filename in ("a.json", "b.json"):
                with open(os.path.join(directory, filename), "w") as handle:
                    json.dump(record, handle)
            with self.assertRaises(DuplicateName):
                load_db(directory)

    def test_shape_db_from_entries(self):
        copy = ShapeDb(self.db)
        self.assertEqual(copy.names, self.db.names)


class TestPointSetFiles(unittest.TestCase):
    def test_round_trip(self):
        shape = sample_uniform(builtin_shape("L", 200), 12)
        raw = SampledShape.from_points([(1.5, 2.0), (3.0, 4.0), (0.0, 9.0)])
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "dots.json")
            save_point_set(shape, path)
            loaded = load_point_set(path)
            save_point_set(raw, path)
            loaded_raw = load_point_set(path)
        self.assertEqual(loaded.source, "L")
        self.assertEqual(loaded.truth_edges, shape.truth_edges)
        np.testing.assert_array_equal(loaded.points, shape.points)
        self.assertIsNone(loaded_raw.truth_edges)
        self.assertIsNone(loaded_raw.source)

    def test_malformed(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "dots.json")
            with open(path, "w") as handle:
                json.dump({"source": None, "k": 5, "points": [[0, 0], [1, 1]]}, handle)
            with self.assertRaises(MalformedFile):
                load_point_set(path)

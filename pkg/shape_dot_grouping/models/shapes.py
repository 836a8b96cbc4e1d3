# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

import json
import logging
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from shapely.geometry import LinearRing

from ..exceptions import (
    BadParameter,
    DuplicateName,
    KExceedsOutline,
    KTooSmall,
    MalformedFile,
    UnknownShape,
    UserError,
    ValidationError,
)
from .config_settings import BUILTIN_POINTS, CANVAS_SIZE, DENSE_OUTLINE_POINTS
from .fourier import Descriptor, descriptor
from .geometry import as_coordinates, edge_key

_logger = logging.getLogger(__name__)

BUILTIN_KINDS = ("circle", "ellipse", "square", "star5", "L", "U", "comb")
DEFAULT_DB_KINDS = ("circle", "ellipse", "L", "square", "star5")
BUILTIN_PREFIX = "builtin:"
MIN_BUILTIN_POINTS = 50

_CENTER = CANVAS_SIZE / 2.0
_SAFE_NAME = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.\-]*$")


def cycle_edges(count):
    """Edges linking every circularly adjacent pair of 0..count-1."""
    return frozenset(edge_key(i, (i + 1) % count) for i in range(count))


@dataclass(frozen=True, eq=False)
class DenseOutline:
    name: str
    points: np.ndarray

    def __post_init__(self):
        coords = as_coordinates(self.points)
        coords.setflags(write=False)
        object.__setattr__(self, "points", coords)
        if not self.name:
            raise ValidationError("An outline needs a name.")
        if len(coords) < 3:
            raise ValidationError(
                "Outline '{}' has {} points, at least 3 are needed.".format(
                    self.name, len(coords)
                )
            )
        repeats = np.flatnonzero(np.all(coords == np.roll(coords, -1, axis=0), axis=1))
        if len(repeats):
            raise ValidationError(
                "Outline '{}' repeats point {} consecutively.".format(
                    self.name, int(repeats[0])
                )
            )
        if not LinearRing(coords).is_simple:
            raise ValidationError(
                "Outline '{}' intersects itself.".format(self.name)
            )
        if len(coords) < DENSE_OUTLINE_POINTS:
            _logger.warning(
                "Outline '%s' has only %d points; sampling will be coarse",
                self.name,
                len(coords),
            )

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True, eq=False)
class SampledShape:
    """K dots taken from an outline, with their ground-truth adjacency.

    ``truth_edges`` is None for raw point sets whose order is unknown.
    """

    source: str
    k: int
    points: np.ndarray
    truth_edges: frozenset = None

    def __post_init__(self):
        coords = as_coordinates(self.points)
        coords.setflags(write=False)
        object.__setattr__(self, "points", coords)
        if self.k != len(coords):
            raise ValidationError(
                "K is {} but {} points were given.".format(self.k, len(coords))
            )
        if self.truth_edges is not None:
            edges = frozenset(edge_key(int(i), int(j)) for i, j in self.truth_edges)
            if any(i == j or i < 0 or j >= self.k for i, j in edges):
                raise ValidationError("Ground truth references unknown points.")
            object.__setattr__(self, "truth_edges", edges)

    @classmethod
    def from_points(cls, points, source=None, truth_edges=None):
        coords = as_coordinates(points)
        return cls(source, len(coords), coords, truth_edges)


def sample_uniform(outline, k):
    """Take ``k`` points at indices floor(j * N / k) of the outline."""
    count = len(outline.points)
    if k < 3:
        raise KTooSmall("K must be at least 3, got {}.".format(k))
    if k > count:
        raise KExceedsOutline(
            "K = {} exceeds the {} points of outline '{}'.".format(
                k, count, outline.name
            )
        )
    indices = (np.arange(k, dtype=np.int64) * count) // k
    return SampledShape(outline.name, k, outline.points[indices], cycle_edges(k))


# Builtin families


def _resample_closed(vertices, count):
    """``count`` points evenly spaced by arc length along a closed polyline."""
    ring = np.vstack([vertices, vertices[:1]])
    lengths = np.linalg.norm(np.diff(ring, axis=0), axis=1)
    cumulative = np.concatenate([[0.0], np.cumsum(lengths)])
    targets = np.arange(count) * cumulative[-1] / count
    return np.column_stack(
        [
            np.interp(targets, cumulative, ring[:, 0]),
            np.interp(targets, cumulative, ring[:, 1]),
        ]
    )


def _star_vertices(tips, outer, inner):
    angles = math.pi / 2 + np.arange(2 * tips) * math.pi / tips
    radii = np.where(np.arange(2 * tips) % 2 == 0, outer, inner)
    return np.column_stack(
        [_CENTER + radii * np.cos(angles), _CENTER + radii * np.sin(angles)]
    )


def _comb_vertices(teeth=5, left=56.0, right=456.0, base=176.0, tooth=40.0):
    pitch = (right - left - tooth) / (teeth - 1)
    vertices = [(left, 56.0), (right, 56.0), (right, 456.0)]
    for t in range(teeth - 1, 0, -1):
        x0 = left + t * pitch
        vertices += [(x0, 456.0), (x0, base), (x0 - pitch + tooth, base)]
        vertices.append((x0 - pitch + tooth, 456.0))
    vertices.append((left, 456.0))
    return np.array(vertices)


_POLYGONS = {
    "square": lambda: np.array(
        [(56.0, 56.0), (456.0, 56.0), (456.0, 456.0), (56.0, 456.0)]
    ),
    "star5": lambda: _star_vertices(5, 200.0, 80.0),
    "L": lambda: np.array(
        [
            (106.0, 56.0),
            (406.0, 56.0),
            (406.0, 176.0),
            (226.0, 176.0),
            (226.0, 456.0),
            (106.0, 456.0),
        ]
    ),
    "U": lambda: np.array(
        [
            (76.0, 56.0),
            (436.0, 56.0),
            (436.0, 456.0),
            (316.0, 456.0),
            (316.0, 176.0),
            (196.0, 176.0),
            (196.0, 456.0),
            (76.0, 456.0),
        ]
    ),
    "comb": _comb_vertices,
}


def builtin_shape(kind, n=BUILTIN_POINTS):
    """Dense outline of a builtin family, centered in the 512 x 512 canvas."""
    if kind not in BUILTIN_KINDS:
        raise BadParameter(
            "Unknown builtin shape '{}'; choose one of {}.".format(
                kind, ", ".join(BUILTIN_KINDS)
            )
        )
    if n < MIN_BUILTIN_POINTS:
        raise BadParameter(
            "Builtin shapes need at least {} points, got {}.".format(
                MIN_BUILTIN_POINTS, n
            )
        )
    if kind == "circle":
        angles = 2 * math.pi * np.arange(n) / n
        points = np.column_stack(
            [_CENTER + 200.0 * np.cos(angles), _CENTER + 200.0 * np.sin(angles)]
        )
    elif kind == "ellipse":
        angles = 2 * math.pi * np.arange(16 * n) / (16 * n)
        dense = np.column_stack(
            [_CENTER + 200.0 * np.cos(angles), _CENTER + 100.0 * np.sin(angles)]
        )
        points = _resample_closed(dense, n)
    else:
        points = _resample_closed(_POLYGONS[kind](), n)
    return DenseOutline(kind, points)


def builtin_names():
    """Names accepted by builtin_shape and the ``builtin:`` source prefix."""
    return BUILTIN_KINDS


def load_outline(source, n=BUILTIN_POINTS):
    """Resolve ``builtin:NAME`` or a shape file path to a DenseOutline."""
    if source.startswith(BUILTIN_PREFIX):
        return builtin_shape(source[len(BUILTIN_PREFIX) :], n)
    outline, _descriptor = _read_shape_file(Path(source), with_descriptor=False)
    return outline


# Shape database


@dataclass(frozen=True, eq=False)
class ShapeDbEntry:
    outline: DenseOutline
    descriptor: Descriptor

    @property
    def name(self):
        return self.outline.name


class ShapeDb:
    """Named dense outlines with their precomputed descriptors, kept in
    name order."""

    def __init__(self, entries=()):
        self.entries = []
        for entry in entries:
            self.add(entry.outline, entry.descriptor)

    def add(self, outline, descriptor_=None):
        if outline.name in self:
            raise DuplicateName(
                "The shape database already holds '{}'.".format(outline.name)
            )
        if descriptor_ is None:
            descriptor_ = descriptor(outline.points)
        self.entries.append(ShapeDbEntry(outline, descriptor_))
        self.entries.sort(key=lambda entry: entry.name)
        return self.entries

    @property
    def names(self):
        return [entry.name for entry in self.entries]

    def get(self, name):
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise UnknownShape("No shape named '{}' in the database.".format(name))

    def outline(self, name):
        return self.get(name).outline

    def __contains__(self, name):
        return any(entry.name == name for entry in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def builtin_db(kinds=DEFAULT_DB_KINDS, n=BUILTIN_POINTS):
    db = ShapeDb()
    for kind in kinds:
        db.add(builtin_shape(kind, n))
    return db


def _malformed(path, reason):
    return MalformedFile("{}: {}".format(path, reason))


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as err:
        raise _malformed(path, "invalid JSON ({})".format(err)) from err
    except UnicodeDecodeError as err:
        raise _malformed(path, "not UTF-8 text ({})".format(err)) from err


def _read_shape_file(path, with_descriptor=True):
    data = _read_json(path)
    if not isinstance(data, dict):
        raise _malformed(path, "a shape file holds a JSON object")
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise _malformed(path, "'name' must be a non empty string")
    points = data.get("points")
    if not isinstance(points, list) or not all(
        isinstance(p, list)
        and len(p) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in p)
        for p in points
    ):
        raise _malformed(path, "'points' must be a list of [x, y] numbers")
    try:
        outline = DenseOutline(name, np.array(points, dtype=float).reshape(-1, 2))
        stored = data.get("descriptor")
        if stored is not None:
            stored = Descriptor(tuple(stored))
        elif with_descriptor:
            stored = descriptor(outline.points)
    except (UserError, TypeError, ValueError) as err:
        raise _malformed(path, str(err)) from err
    return outline, stored


def load_db(path):
    """Load every ``*.json`` shape file of a directory, in file name order."""
    directory = Path(path)
    if not directory.is_dir():
        raise FileNotFoundError("Shape database directory {} not found.".format(path))
    db = ShapeDb()
    for file_path in sorted(directory.glob("*.json")):
        outline, stored = _read_shape_file(file_path)
        db.add(outline, stored)
    _logger.info("Loaded %d shape(s) from %s", len(db), directory)
    return db


def save_db(db, path):
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)
    for entry in db:
        if not _SAFE_NAME.match(entry.name):
            raise BadParameter(
                "Shape name '{}' cannot be used as a file name.".format(entry.name)
            )
        record = {
            "name": entry.name,
            "points": entry.outline.points.tolist(),
            "descriptor": list(entry.descriptor.values),
        }
        with open(directory / (entry.name + ".json"), "w", encoding="utf-8") as handle:
            json.dump(record, handle)
            handle.write("\n")
    _logger.info("Saved %d shape(s) to %s", len(db), directory)


# Point-set files


def load_point_set(path):
    data = _read_json(path)
    if not isinstance(data, dict) or "points" not in data:
        raise _malformed(path, "a point-set file holds an object with 'points'")
    try:
        points = np.array(data["points"], dtype=float).reshape(-1, 2)
        k = data.get("k", len(points))
        truth = data.get("truth_edges")
        if truth is not None:
            truth = [tuple(int(v) for v in pair) for pair in truth]
            if any(len(pair) != 2 for pair in truth):
                raise ValidationError("'truth_edges' must hold index pairs")
        return SampledShape(data.get("source"), int(k), points, truth)
    except (ValidationError, TypeError, ValueError) as err:
        raise _malformed(path, str(err)) from err


def save_point_set(shape, path):
    record = {
        "source": shape.source,
        "k": shape.k,
        "points": shape.points.tolist(),
        "truth_edges": None
        if shape.truth_edges is None
        else [list(edge) for edge in sorted(shape.truth_edges)],
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(record, handle)
        handle.write("\n")

# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

import configparser
import dataclasses
import logging

from ..exceptions import ValidationError

_logger = logging.getLogger(__name__)

CONFIG_SECTION = "shape_dot_grouping"

DUPLICATE_TOLERANCE = 1e-9
COCIRCULAR_TOLERANCE = 1e-9
PREDICATE_EPSILON = 1e-12
STOP_FLATNESS = 5.0
RETRIEVAL_START = 30
RETRIEVAL_STEP = 10
RETRIEVAL_CAP = 500
RETRIEVAL_MARGIN = 3.0
DESCRIPTOR_SIZE = 10
MIN_DESCRIPTOR_POINTS = 2 * DESCRIPTOR_SIZE + 1
M_THRESHOLD = 0.8
GRID_MIN = 10
GRID_MAX = 200
GRID_STEP = 10
BUILTIN_POINTS = 400
DENSE_OUTLINE_POINTS = 200
BOUNDARY_TOLERANCE = 1e-9
CANVAS_SIZE = 512
DOT_RADIUS = 10.0
COLOR_POINTS = "#CC0000"
COLOR_TRIANGLE_FILL = "#D9D9D9"
COLOR_BACKGROUND = "#CCCCCC"
COLOR_TRIANGLE_STROKE = "#B3B3B3"
COLOR_GROUPING = "#0000CC"


@dataclasses.dataclass(frozen=True)
class ShapeGroupingSettings:
    duplicate_tolerance: float = DUPLICATE_TOLERANCE
    predicate_epsilon: float = PREDICATE_EPSILON
    stop_flatness: float = STOP_FLATNESS
    retrieval_start: int = RETRIEVAL_START
    retrieval_step: int = RETRIEVAL_STEP
    retrieval_cap: int = RETRIEVAL_CAP
    retrieval_margin: float = RETRIEVAL_MARGIN
    m_threshold: float = M_THRESHOLD
    grid_min: int = GRID_MIN
    grid_max: int = GRID_MAX
    grid_step: int = GRID_STEP
    builtin_points: int = BUILTIN_POINTS
    boundary_tolerance: float = BOUNDARY_TOLERANCE
    canvas_size: int = CANVAS_SIZE
    dot_radius: float = DOT_RADIUS
    color_points: str = COLOR_POINTS
    color_triangle_fill: str = COLOR_TRIANGLE_FILL
    color_background: str = COLOR_BACKGROUND
    color_triangle_stroke: str = COLOR_TRIANGLE_STROKE
    color_grouping: str = COLOR_GROUPING

    def __post_init__(self):
        if self.grid_min < 3 or self.grid_step <= 0 or self.grid_max < self.grid_min:
            raise ValidationError(
                "The K grid {}..{} step {} is not valid.".format(
                    self.grid_min, self.grid_max, self.grid_step
                )
            )
        if self.retrieval_start < MIN_DESCRIPTOR_POINTS or self.retrieval_step <= 0:
            raise ValidationError(
                "Retrieval must start at {} points or more with a positive "
                "step.".format(MIN_DESCRIPTOR_POINTS)
            )
        if self.stop_flatness < 0:
            raise ValidationError("The stop flatness must not be negative.")

    @property
    def grid(self):
        return tuple(range(self.grid_min, self.grid_max + 1, self.grid_step))

    @classmethod
    def from_file(cls, path):
        """Read overrides from the ``[shape_dot_grouping]`` section of an INI file."""
        parser = configparser.ConfigParser()
        try:
            with open(path, encoding="utf-8") as handle:
                parser.read_file(handle)
            if not parser.has_section(CONFIG_SECTION):
                _logger.warning("%s has no [%s] section", path, CONFIG_SECTION)
                return cls()
            items = parser.items(CONFIG_SECTION)
        except (configparser.Error, UnicodeDecodeError) as err:
            raise ValidationError(
                "{} is not a readable settings file: {}".format(path, err)
            ) from err
        types = {field.name: field.type for field in dataclasses.fields(cls)}
        values = {}
        for key, raw in items:
            if key not in types:
                raise ValidationError(
                    "Unknown setting '{}' in {}.".format(key, path)
                )
            try:
                if types[key] in (int, "int"):
                    values[key] = int(raw)
                elif types[key] in (float, "float"):
                    values[key] = float(raw)
                else:
                    values[key] = raw.strip()
            except ValueError as err:
                raise ValidationError(
                    "Setting '{}' has an invalid value '{}'.".format(key, raw)
                ) from err
        _logger.debug("Loaded settings overrides %s", values)
        return cls(**values)


DEFAULT_SETTINGS = ShapeGroupingSettings()

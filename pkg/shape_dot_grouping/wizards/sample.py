# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

import logging
from dataclasses import dataclass

from ..models.config_settings import DEFAULT_SETTINGS
from ..models.shapes import load_outline, sample_uniform, save_point_set

_logger = logging.getLogger(__name__)


@dataclass
class ShapeSample:
    """Sample K dots from a shape file or builtin and save them as a
    point-set file with their ground truth."""

    source: str
    k: int
    out: str
    settings: object = DEFAULT_SETTINGS

    def run(self):
        outline = load_outline(self.source, self.settings.builtin_points)
        shape = sample_uniform(outline, self.k)
        save_point_set(shape, self.out)
        _logger.info(
            "Sampled %d dots from '%s' into %s", shape.k, outline.name, self.out
        )
        return shape

# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

import logging
from dataclasses import dataclass

from ..exceptions import BadParameter
from ..models.config_settings import DEFAULT_SETTINGS
from ..models.grouping import SURFACE, group, grouping_score
from ..models.shapes import load_outline, load_point_set, sample_uniform
from ..report.svg_render import GROUPING, POINTS, TRIANGLES, RenderSpec, render_svg

_logger = logging.getLogger(__name__)


@dataclass
class ShapeRender:
    out: str
    mode: str = POINTS
    points: str = None
    shape: str = None
    k: int = None
    outline: str = None
    method: str = SURFACE
    settings: object = DEFAULT_SETTINGS

    def _dots(self):
        """Sampled dots and, when known, the outline they came from."""
        if (self.points is None) == (self.shape is None):
            raise BadParameter("Give either a point-set file or a shape source.")
        if self.shape is not None:
            if self.k is None:
                raise BadParameter("Sampling a shape source needs K.")
            outline = load_outline(self.shape, self.settings.builtin_points)
            return sample_uniform(outline, self.k), outline
        outline = None
        if self.outline is not None:
            outline = load_outline(self.outline, self.settings.builtin_points)
        return load_point_set(self.points), outline

    def run(self):
        spec = RenderSpec.from_settings(self.mode, self.settings)
        dots, outline = self._dots()
        if spec.mode == TRIANGLES and outline is None:
            raise BadParameter(
                "The triangles mode needs the source outline of the dots."
            )
        grouping = caption = None
        if spec.mode == GROUPING:
            grouping = group(dots, self.method)
            if dots.truth_edges is not None:
                caption = "xi = {:.3f}".format(grouping_score(grouping, dots))
        text = render_svg(
            spec, dots, outline=outline, grouping=grouping, caption=caption
        )
        with open(self.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        _logger.info("Rendered %d dots (%s) to %s", dots.k, spec.mode, self.out)
        return text

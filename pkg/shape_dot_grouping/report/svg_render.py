# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).
"""SVG stimuli: dots alone, dots over every Delaunay triangle, dots over the
triangles inside the source outline, and grouping results."""

import logging
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from ..exceptions import BadParameter
from ..models.config_settings import BOUNDARY_TOLERANCE, DEFAULT_SETTINGS
from ..models.geometry import as_coordinates, delaunay

_logger = logging.getLogger(__name__)

POINTS = "points"
ALL_TRIANGLES = "all-triangles"
TRIANGLES = "triangles"
GROUPING = "grouping"
MODES = (POINTS, ALL_TRIANGLES, TRIANGLES, GROUPING)

PREAMBLE = """\
<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" \
width="%(size)d" height="%(size)d" viewBox="0 0 %(size)d %(size)d">
<rect x="0" y="0" width="%(size)d" height="%(size)d" fill="%(background)s"/>
"""

POSTAMBLE = """\
</svg>
"""


class SvgCanvas:
    def __init__(self, size, background):
        self.size = size
        self.background = background
        self.commands = []

    def circle(self, x, y, radius, fill):
        self.commands.append(
            '<circle cx="%f" cy="%f" r="%g" fill="%s"/>' % (x, y, radius, fill)
        )

    def polygon(self, points, fill, stroke, width=1.0):
        self.commands.append(
            '<polygon points="%s" fill="%s" stroke="%s" stroke-width="%g"/>'
            % (" ".join("%f,%f" % tuple(p) for p in points), fill, stroke, width)
        )

    def line(self, start, end, color, width=2.0, dash=None):
        style = ' stroke-dasharray="%s"' % dash if dash else ""
        self.commands.append(
            '<line x1="%f" y1="%f" x2="%f" y2="%f" stroke="%s" stroke-width="%g"%s/>'
            % (start[0], start[1], end[0], end[1], color, width, style)
        )

    def text(self, x, y, text, color="#000000"):
        self.commands.append(
            '<text x="%f" y="%f" fill="%s" font-size="16" '
            'font-family="monospace">%s</text>' % (x, y, color, escape(text))
        )

    def render(self):
        size = self.size
        background = self.background
        return PREAMBLE % locals() + "".join(c + "\n" for c in self.commands) + (
            POSTAMBLE
        )


@dataclass(frozen=True)
class RenderSpec:
    mode: str
    canvas_size: int = DEFAULT_SETTINGS.canvas_size
    dot_radius: float = DEFAULT_SETTINGS.dot_radius
    color_points: str = DEFAULT_SETTINGS.color_points
    color_triangle_fill: str = DEFAULT_SETTINGS.color_triangle_fill
    color_background: str = DEFAULT_SETTINGS.color_background
    color_triangle_stroke: str = DEFAULT_SETTINGS.color_triangle_stroke
    color_grouping: str = DEFAULT_SETTINGS.color_grouping

    def __post_init__(self):
        if self.mode not in MODES:
            raise BadParameter(
                "Unknown render mode '{}'; choose one of {}.".format(
                    self.mode, ", ".join(MODES)
                )
            )

    @classmethod
    def from_settings(cls, mode, settings=DEFAULT_SETTINGS):
        return cls(
            mode,
            settings.canvas_size,
            settings.dot_radius,
            settings.color_points,
            settings.color_triangle_fill,
            settings.color_background,
            settings.color_triangle_stroke,
            settings.color_grouping,
        )


def point_in_polygon(point, outline, tolerance=BOUNDARY_TOLERANCE):
    """Even-odd test; points within ``tolerance`` of an edge are inside."""
    px, py = (float(v) for v in point)
    start = as_coordinates(outline)
    end = np.roll(start, -1, axis=0)
    delta = end - start
    length2 = np.einsum("ij,ij->i", delta, delta)
    offset = np.array([px, py]) - start
    along = np.clip(
        np.einsum("ij,ij->i", offset, delta) / np.where(length2 > 0, length2, 1.0),
        0.0,
        1.0,
    )
    nearest = start + along[:, None] * delta
    if np.min(np.hypot(nearest[:, 0] - px, nearest[:, 1] - py)) <= tolerance:
        return True
    crossing = (start[:, 1] > py) != (end[:, 1] > py)
    if not np.any(crossing):
        return False
    s, d = start[crossing], delta[crossing]
    x_cross = s[:, 0] + (py - s[:, 1]) * d[:, 0] / d[:, 1]
    return bool(np.count_nonzero(px < x_cross) % 2)


def inside_triangles(coords, triangles, outline):
    """Triangles whose centroid lies inside ``outline``."""
    return [
        tri
        for tri in triangles
        if point_in_polygon(coords[list(tri)].mean(axis=0), outline)
    ]


def render_svg(spec, shape, *, outline=None, grouping=None, caption=None):
    """Draw ``shape`` (a SampledShape) in the requested mode.

    ``outline`` is needed by the triangles mode, ``grouping`` by the
    grouping mode.
    """
    coords = as_coordinates(shape)
    canvas = SvgCanvas(spec.canvas_size, spec.color_background)
    if spec.mode in (ALL_TRIANGLES, TRIANGLES):
        triangles = delaunay(coords).alive_triangles()
        if spec.mode == TRIANGLES:
            if outline is None:
                raise BadParameter("The triangles mode needs the source outline.")
            kept = inside_triangles(coords, triangles, outline)
            _logger.info(
                "Kept %d of %d triangles inside '%s'",
                len(kept),
                len(triangles),
                outline.name,
            )
            triangles = kept
        for tri in triangles:
            canvas.polygon(
                coords[list(tri)], spec.color_triangle_fill, spec.color_triangle_stroke
            )
    elif spec.mode == GROUPING:
        if grouping is None:
            raise BadParameter("The grouping mode needs a grouping result.")
        if grouping.method == "surface":
            for i, j in delaunay(coords).alive_edges():
                canvas.line(
                    coords[i], coords[j], spec.color_triangle_stroke, 1.0, dash="4 4"
                )
        for i, j in sorted(grouping.selected_edges):
            canvas.line(coords[i], coords[j], spec.color_grouping, 3.0)
    for x, y in coords:
        canvas.circle(x, y, spec.dot_radius, spec.color_points)
    if caption:
        canvas.text(8.0, spec.canvas_size - 8.0, caption)
    return canvas.render()

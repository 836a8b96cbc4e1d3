# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).

import json
import logging
from dataclasses import dataclass

from ..exceptions import BadParameter
from ..models.config_settings import DEFAULT_SETTINGS
from ..models.grouping import (
    METHODS,
    SURFACE,
    group_mst,
    group_surface,
    group_surface_thresholded,
    grouping_score,
)
from ..models.shapes import load_point_set

_logger = logging.getLogger(__name__)


@dataclass
class PointSetGroup:
    points: str
    method: str = SURFACE
    out: str = None
    stop_flatness: float = None
    settings: object = DEFAULT_SETTINGS

    def _check_options(self):
        if self.method not in METHODS:
            raise BadParameter(
                "Unknown grouping method '{}'; choose one of {}.".format(
                    self.method, ", ".join(METHODS)
                )
            )
        if self.stop_flatness is not None and self.method != SURFACE:
            raise BadParameter(
                "A stop flatness only applies to the surface method, "
                "not '{}'.".format(self.method)
            )

    def run(self):
        """Group the dots of the point-set file and write the result record.

        Returns the GroupingResult and the grouping score, which is None
        when the file carries no ground truth.
        """
        self._check_options()
        shape = load_point_set(self.points)
        tolerances = {
            "duplicate_tolerance": self.settings.duplicate_tolerance,
            "epsilon": self.settings.predicate_epsilon,
        }
        if self.stop_flatness is not None:
            surface = group_surface_thresholded(shape, self.stop_flatness, **tolerances)
            result = surface.as_grouping()
            record = surface.to_record()
        else:
            if self.method == SURFACE:
                result = group_surface(shape, **tolerances)
            else:
                result = group_mst(shape)
            record = result.to_record()
        xi = None
        if shape.truth_edges is not None:
            xi = grouping_score(result, shape)
        record["source"] = shape.source
        record["xi"] = xi
        if self.out:
            with open(self.out, "w", encoding="utf-8") as handle:
                json.dump(record, handle)
                handle.write("\n")
            _logger.info(
                "Wrote %s grouping of %d dots to %s", result.method, result.k, self.out
            )
        return result, xi

# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).
"""DC-normalized Fourier descriptors of centroid-distance signatures."""

import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import SequenceTooShort, ValidationError, ZeroDC
from .config_settings import DESCRIPTOR_SIZE, MIN_DESCRIPTOR_POINTS
from .geometry import as_coordinates


@dataclass(frozen=True)
class Descriptor:
    values: tuple

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if len(values) != DESCRIPTOR_SIZE:
            raise ValidationError(
                "A descriptor has exactly {} components, got {}.".format(
                    DESCRIPTOR_SIZE, len(values)
                )
            )
        if any(not math.isfinite(v) or v < 0 for v in values):
            raise ValidationError(
                "Descriptor components must be finite and non negative."
            )
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def as_array(self):
        return np.array(self.values)


def centroid_distances(sequence):
    coords = as_coordinates(sequence)
    return np.linalg.norm(coords - coords.mean(axis=0), axis=1)


def descriptor(sequence):
    """Magnitudes of frequency bins 1..10 of the centroid-distance signature,
    each divided by the magnitude of bin 0.

    The transform is taken on the sequence as given, without resampling;
    bin 0 of the unnormalized transform is the sum of the distances.
    """
    coords = as_coordinates(sequence)
    if len(coords) < MIN_DESCRIPTOR_POINTS:
        raise SequenceTooShort(
            "At least {} points are needed for {} Fourier coefficients, "
            "got {}.".format(MIN_DESCRIPTOR_POINTS, DESCRIPTOR_SIZE, len(coords))
        )
    spectrum = np.abs(np.fft.rfft(centroid_distances(coords)))
    dc = spectrum[0]
    if not dc > 0:
        raise ZeroDC("Every point coincides with the centroid.")
    return Descriptor(tuple(spectrum[1 : DESCRIPTOR_SIZE + 1] / dc))


def distance(a, b):
    """Euclidean distance between two descriptors."""
    return float(np.linalg.norm(np.asarray(tuple(a)) - np.asarray(tuple(b))))

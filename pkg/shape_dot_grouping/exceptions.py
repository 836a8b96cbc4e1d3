# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).
"""Errors raised by shape_dot_grouping.

The layering follows the usual addon convention: ``UserError`` is the root of
every deliberate error, ``ValidationError`` flags a value that breaks a
constraint and ``MissingError`` a reference that does not resolve.
"""


class UserError(Exception):
    """Base of every error raised on purpose by this package."""

    def __init__(self, message):
        super().__init__(message)
        self.message = message

    def __str__(self):
        return self.message


class ValidationError(UserError):
    """A value or a file violates a documented constraint."""


class MissingError(UserError):
    """A referenced record does not exist."""


class GeometryError(UserError):
    """The input points cannot be triangulated or processed geometrically."""


class TooFewPoints(GeometryError):
    pass


class DegenerateInput(GeometryError):
    pass


class DuplicatePoints(GeometryError):
    pass


class NotBoundaryEdge(GeometryError):
    pass


class NotRemovable(GeometryError):
    pass


class ZeroDC(GeometryError):
    pass


class KTooSmall(ValidationError):
    pass


class KExceedsOutline(ValidationError):
    pass


class BadParameter(ValidationError):
    pass


class MalformedFile(ValidationError):
    pass


class DuplicateName(ValidationError):
    pass


class SequenceTooShort(ValidationError):
    pass


class EmptySelection(ValidationError):
    pass


class UnknownShape(MissingError):
    pass


class NoTermination(UserError):
    """The retrieval loop reached its cap without a confident answer."""

"""Exception types shared across the package."""
from __future__ import annotations


class CrowdPsychError(Exception):
    """Base class for every error this package raises on purpose."""


class TrackingFormatError(CrowdPsychError):
    """Base class for tracking-file syntax and consistency errors."""


class MalformedHeaderError(TrackingFormatError):
    """A pedestrian header was expected but the token is not ``P-<int>``."""


class MalformedTupleError(TrackingFormatError):
    """A frame/position triple is incomplete, non-numeric or out of range."""


class DuplicateIdError(TrackingFormatError):
    """The same pedestrian id appears in more than one header."""


class DuplicateFrameInTrackError(TrackingFormatError):
    """A track lists two positions for the same frame."""


class AlreadyMetersError(CrowdPsychError):
    """Coordinate conversion was requested on a dataset already in meters."""


class NonPositiveScaleError(CrowdPsychError):
    """The pixels-per-meter scale must be strictly positive."""


class MissingTrackingFileError(CrowdPsychError):
    """The requested tracking file does not exist in the input directory."""


class TrackTooShortError(CrowdPsychError):
    """Kinematics need at least two points per track."""


class EmptySamplesError(CrowdPsychError):
    """A summary was requested over an empty sample sequence."""


class UndefinedHeadingError(CrowdPsychError):
    """Pair dissimilarity was requested where a heading is not defined."""


class DivergedTrainingError(CrowdPsychError):
    """Training loss or gradient became non-finite."""


class DegenerateGroupError(CrowdPsychError):
    """A group never has two members co-present in any frame."""


class EmptyFactorError(CrowdPsychError):
    """An OCEAN factor ended up with no registered items."""


class RegistryError(CrowdPsychError):
    """An item registry file could not be parsed."""


class OutOfRangeError(CrowdPsychError):
    """A bounded input lies outside its documented range."""


class InvalidSpecError(CrowdPsychError):
    """A scenario specification failed validation."""


class EmptyDatasetError(CrowdPsychError):
    """The pipeline needs at least one usable track."""


class ConfigError(CrowdPsychError):
    """The analysis configuration failed validation."""

"""Exception types shared across the package."""


class LinkDiscrimError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameterError(LinkDiscrimError, ValueError):
    """A parameter lies outside its documented domain."""


class TooFewEdgesError(LinkDiscrimError, ValueError):
    """An edge split would leave the training or test side empty."""


class MismatchedDimensionsError(LinkDiscrimError, ValueError):
    """Model and split refer to different node sets."""


class DegenerateClassesError(LinkDiscrimError, ValueError):
    """An operation needs at least one positive and one negative sample."""


class UnknownMetricError(LinkDiscrimError, KeyError):
    """Requested metric name is not present in the sample table."""


class FileFormatError(LinkDiscrimError, ValueError):
    """An input file could not be parsed."""


class ConfigError(FileFormatError):
    """A run configuration file is malformed or holds invalid values."""


class ScoreFileError(FileFormatError):
    """An external score file is malformed."""


class OutputDirectoryError(LinkDiscrimError):
    """The requested output directory cannot be created or written."""

"""Exception types shared across the package."""


class LobbyLensError(Exception):
    """Base class for errors raised by this package."""


class DataFormatError(LobbyLensError):
    """An input file (bills JSONL, counts CSV, stopword list) is malformed."""


class ModelFormatError(LobbyLensError):
    """A persisted model file cannot be read back safely."""


class ConfigError(LobbyLensError):
    """An experiment configuration is invalid or incomplete."""

"""Exception types raised across the package."""


class WordsetsError(Exception):
    """Base class for all library errors."""


class CorpusError(WordsetsError):
    """Raised for unloadable corpora or invalid split requests."""


class MiningError(WordsetsError):
    """Raised when itemset mining cannot run or produces nothing usable."""


class ModelError(WordsetsError):
    """Raised for invalid probability-table construction or files."""


class ModelFormatError(ModelError):
    """Model file is syntactically or structurally malformed."""


class ModelVersionError(ModelError):
    """Model file declares a format version this build cannot read."""


class ModelChecksumError(ModelError):
    """Model file content does not match its embedded checksum."""

"""Exception hierarchy shared across the pipeline."""

from __future__ import annotations


class MisuseForgeError(Exception):
    """Base class for all tool-specific failures."""


class ParseError(MisuseForgeError):
    """Source text violates the subset grammar."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col


class UnsupportedConstruct(ParseError):
    """Syntactically recognizable Java that is outside the subset."""


class AmbiguousSnippet(MisuseForgeError):
    """A class-mode snippet declared more than one method."""


class SchemaError(MisuseForgeError):
    """A JSON document (catalog, patterns, report) violates its schema."""


class VersionMismatch(MisuseForgeError):
    """A persisted file carries an unsupported schema version."""


class NoCriticalApi(MisuseForgeError):
    """No critical security API could be identified for an example pair."""


class MalformedEdl(MisuseForgeError):
    """Example pair uses the example-definition helpers inconsistently."""


class ConflictingPatterns(MisuseForgeError):
    """Two mergeable patterns disagree structurally."""


class DuplicateClass(MisuseForgeError):
    """Two source files declare the same class name."""


class NoSources(MisuseForgeError):
    """A target directory contains no source files."""

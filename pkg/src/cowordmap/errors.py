"""Exception types shared across the pipeline."""


class CowordError(Exception):
    """Base class for every error raised by cowordmap."""


class ParseError(CowordError):
    """Structural problem in a bibliographic export file."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class UnterminatedRecord(ParseError):
    """A record was still open (no ER tag) when the file ended."""


class MalformedTagLine(ParseError):
    """A line is neither a tag line, a continuation line, nor blank."""


class EmptyKeyword(CowordError):
    """A keyword was empty after trimming."""


class ThesaurusConflict(CowordError):
    """Thesaurus invariants violated (duplicate variant, canonical-as-variant)."""


class InvalidScheme(CowordError):
    """Period scheme has overlapping periods or start_year > end_year."""


class DomainError(CowordError):
    """Co-occurrence counts outside their valid domain."""


class EmptyTheme(CowordError):
    """A theme operation received an empty member set."""


class EmptyVocabulary(CowordError):
    """Keyword overlap requested on an empty vocabulary."""


class EmptySet(CowordError):
    """Inclusion index requested on an empty keyword set."""


class TooFewPeriods(CowordError):
    """Longitudinal analysis needs at least two periods."""


class EmptyDiagram(CowordError):
    """Cannot render a strategic diagram with no themes."""


class EmptyChain(CowordError):
    """Cannot render an overlap chain with no periods."""


class EmptyGraph(CowordError):
    """Cannot emit a graph description for an empty node set."""


class ConfigError(CowordError):
    """Pipeline configuration is invalid."""

"""Exception types raised by the tmfuzzy package."""


class TmFuzzyError(Exception):
    """Base class for all tmfuzzy errors."""


class AlignmentError(TmFuzzyError):
    """Parallel inputs are not aligned (line counts differ, or per-metric
    result files do not cover the same workload indices)."""


class EncodingError(TmFuzzyError):
    """A corpus file is not valid UTF-8."""


class CapacityError(TmFuzzyError):
    """A sample request asks for more segments than are available."""


class EmptyBankError(TmFuzzyError):
    """Retrieval was attempted against an empty TM bank."""


class JudgmentValidationError(TmFuzzyError):
    """A judgment row is malformed (bad rating, bad index, missing field)."""


class CoverageError(TmFuzzyError):
    """A retrieved (workload, bank) pair has no MOS entry."""


class FormatError(TmFuzzyError):
    """A CSV/TSV artifact could not be parsed."""

"""Exception types shared across the assessment pipeline.

Dataset validation collects individual violations (subclasses of
:class:`DataViolation`) and raises them bundled in :class:`ValidationErrors`,
so one ingestion run surfaces every data problem instead of the first.
"""

from __future__ import annotations


class AssessmentError(Exception):
    """Base class for every error raised by this package."""


class DataViolation(AssessmentError):
    """A single dataset problem; collected, not necessarily raised on its own."""


class MissingBaseline(DataViolation):
    def __init__(self, year: int, category: str):
        self.year = year
        self.category = category
        super().__init__(f"no citation baseline for ({year}, {category!r})")


class DuplicateResearcherId(DataViolation):
    def __init__(self, researcher_id: str):
        self.researcher_id = researcher_id
        super().__init__(f"duplicate researcher id {researcher_id!r}")


class MalformedAuthorList(DataViolation):
    def __init__(self, publication_id: str, reason: str):
        self.publication_id = publication_id
        self.reason = reason
        super().__init__(f"publication {publication_id!r}: {reason}")


class UnknownResearcherRef(DataViolation):
    def __init__(self, publication_id: str, researcher_id: str):
        self.publication_id = publication_id
        self.researcher_id = researcher_id
        super().__init__(
            f"publication {publication_id!r} references unknown researcher {researcher_id!r}"
        )


class YearsOutOfRange(DataViolation):
    def __init__(self, researcher_id: str, years_active: int, period_length: int):
        self.researcher_id = researcher_id
        self.years_active = years_active
        self.period_length = period_length
        super().__init__(
            f"researcher {researcher_id!r}: years_active {years_active} exceeds "
            f"the {period_length}-year observation period"
        )


class ValidationErrors(AssessmentError):
    """Bundle of every violation found while validating a dataset."""

    def __init__(self, errors: list[DataViolation]):
        self.errors = list(errors)
        lines = "\n".join(f"  - {e}" for e in self.errors)
        super().__init__(f"{len(self.errors)} dataset violation(s):\n{lines}")


class EmptyPopulation(AssessmentError):
    """Every institution was excluded; the assessment cannot proceed."""


class EmptyAuthorList(AssessmentError):
    pass


class ZeroYearsActive(AssessmentError):
    def __init__(self, researcher_id: str):
        self.researcher_id = researcher_id
        super().__init__(
            f"researcher {researcher_id!r} has zero years active; "
            "should have been excluded upstream"
        )


class MissingScore(AssessmentError):
    def __init__(self, researcher_id: str):
        self.researcher_id = researcher_id
        super().__init__(f"no score supplied for researcher {researcher_id!r}")


class DegenerateSample(AssessmentError):
    """Too few values, or no variation, for the requested statistic."""


class NonPositiveShift(AssessmentError):
    def __init__(self, delta: float):
        self.delta = delta
        super().__init__(f"log shift requires delta > 0, got {delta}")


class InsufficientDegreesOfFreedom(AssessmentError):
    def __init__(self, total_n: int, group_count: int):
        self.total_n = total_n
        self.group_count = group_count
        super().__init__(
            f"pooled fit needs more observations than groups "
            f"(N={total_n}, J={group_count})"
        )


class DegenerateRegressor(AssessmentError):
    """Size-slope regression needs at least 3 points with non-constant sizes."""


class EmptyReport(AssessmentError):
    """The report carries nothing to plot."""


class IoError(AssessmentError):
    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


class ParseError(AssessmentError):
    def __init__(self, file: str, line: int, column: str, reason: str):
        self.file = file
        self.line = line
        self.column = column
        self.reason = reason
        super().__init__(f"{file}:{line}: column {column!r}: {reason}")


class PipelineError(AssessmentError):
    """Assessment pipeline failed after inputs were accepted."""
